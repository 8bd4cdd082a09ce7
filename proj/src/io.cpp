#include "gammalg/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gammalg/error.hpp"

namespace gammalg {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); }
[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Json big_to_json(const BigInt& n) {
  if (n <= BigInt(std::numeric_limits<std::int64_t>::max())) return n.convert_to<std::int64_t>();
  return n.str();
}

Word word_or_parse_error(const Alphabet& alpha, const std::string& text) {
  try {
    return alpha.parse_word(text);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- specs

SubshiftSpec parse_spec(const Json& j) {
  if (!j.is_object()) invalid("spec must be a JSON object");
  if (!j.contains("alphabet") || !j["alphabet"].is_array()) invalid("missing alphabet array");
  std::vector<std::string> raw;
  for (const auto& s : j["alphabet"]) {
    if (!s.is_string()) invalid("alphabet symbols must be strings");
    raw.push_back(s.get<std::string>());
  }
  SubshiftSpec spec{Alphabet(raw), FullShift{}};
  const Alphabet& alpha = spec.alphabet;
  if (!j.contains("type") || !j["type"].is_string()) invalid("missing type");
  const std::string type = j["type"].get<std::string>();
  const int payloads = int(j.contains("forbidden")) + int(j.contains("matrix")) + int(j.contains("graph"));
  auto want_payload = [&](const char* key) {
    if (key == nullptr ? payloads != 0 : (payloads != 1 || !j.contains(key)))
      invalid(std::string("type '") + type + "' needs " + (key ? std::string("exactly the '") + key + "' payload" : "no payload"));
  };
  if (type == "full") {
    want_payload(nullptr);
  } else if (type == "sft_forbidden") {
    want_payload("forbidden");
    if (!j["forbidden"].is_array()) invalid("forbidden must be an array");
    SftForbidden f;
    for (const auto& w : j["forbidden"]) {
      if (!w.is_string()) invalid("forbidden words must be strings");
      f.words.push_back(alpha.parse_word(w.get<std::string>()));
      if (f.words.back().empty()) invalid("forbidden words must be nonempty");
    }
    spec.variant = std::move(f);
  } else if (type == "sft_matrix") {
    want_payload("matrix");
    const auto& m = j["matrix"];
    if (!m.is_array() || m.size() != raw.size()) invalid("matrix must have one row per symbol");
    // Rows and columns follow the order of the alphabet array.
    std::vector<Letter> idx;
    for (const auto& s : raw) idx.push_back(alpha.letter(s));
    SftMatrix sm{std::vector<std::vector<int>>(raw.size(), std::vector<int>(raw.size(), 0))};
    for (std::size_t r = 0; r < raw.size(); ++r) {
      if (!m[r].is_array() || m[r].size() != raw.size()) invalid("matrix must be square");
      for (std::size_t c = 0; c < raw.size(); ++c) {
        if (!m[r][c].is_number_integer()) invalid("matrix entries must be 0 or 1");
        const int x = m[r][c].get<int>();
        if (x != 0 && x != 1) invalid("matrix entries must be 0 or 1");
        sm.rows[idx[r]][idx[c]] = x;
      }
    }
    spec.variant = std::move(sm);
  } else if (type == "sofic") {
    want_payload("graph");
    const auto& g = j["graph"];
    if (!g.is_object() || !g.contains("vertices") || !g.contains("edges") || !g["vertices"].is_array() || !g["edges"].is_array())
      invalid("graph needs vertices and edges arrays");
    SoficGraph sg;
    std::map<std::string, int> vid;
    for (const auto& v : g["vertices"]) {
      const std::string name = v.is_string() ? v.get<std::string>() : v.dump();
      if (!vid.emplace(name, static_cast<int>(sg.vertices.size())).second) invalid("repeated vertex '" + name + "'");
      sg.vertices.push_back(name);
    }
    auto vertex = [&](const Json& v) {
      const std::string name = v.is_string() ? v.get<std::string>() : v.dump();
      auto it = vid.find(name);
      if (it == vid.end()) invalid("edge references unknown vertex '" + name + "'");
      return it->second;
    };
    for (const auto& e : g["edges"]) {
      if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("label") || !e["label"].is_string())
        invalid("edges need from, to and a string label");
      sg.edges.push_back({vertex(e["from"]), vertex(e["to"]), alpha.letter(e["label"].get<std::string>())});
    }
    spec.variant = std::move(sg);
  } else {
    invalid("unknown type '" + type + "'");
  }
  return spec;
}

SubshiftSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(j);
}

Json spec_to_json(const SubshiftSpec& spec) {
  const Alphabet& a = spec.alphabet;
  Json j{{"alphabet", a.symbols()}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullShift>) {
          j["type"] = "full";
        } else if constexpr (std::is_same_v<T, SftForbidden>) {
          j["type"] = "sft_forbidden";
          Json f = Json::array();
          for (const auto& w : v.words) f.push_back(a.format_word(w));
          j["forbidden"] = f;
        } else if constexpr (std::is_same_v<T, SftMatrix>) {
          j["type"] = "sft_matrix";
          j["matrix"] = v.rows;
        } else {
          j["type"] = "sofic";
          Json edges = Json::array();
          for (const auto& e : v.edges)
            edges.push_back({{"from", v.vertices[e.from]}, {"to", v.vertices[e.to]}, {"label", a.symbol(e.label)}});
          j["graph"] = {{"vertices", v.vertices}, {"edges", edges}};
        }
      },
      spec.variant);
  return j;
}

// ---------------------------------------------------------------- automata, points

Json dfa_to_json(const Dfa& d) {
  Json rows = Json::array();
  for (int s = 0; s < d.size(); ++s) {
    Json row = Json::array();
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      row.push_back(t == kNoState ? Json(nullptr) : Json(t));
    }
    rows.push_back(row);
  }
  return {{"states", d.size()}, {"next", rows}};
}

Dfa dfa_from_json(const Json& j, int letters) {
  if (!j.is_object() || !j.contains("next") || !j["next"].is_array()) parse_fail("inline automaton needs a 'next' table");
  Dfa d{letters, {}};
  const int n = static_cast<int>(j["next"].size());
  for (int s = 0; s < n; ++s) d.add_state();
  for (int s = 0; s < n; ++s) {
    const auto& row = j["next"][s];
    if (!row.is_array() || static_cast<int>(row.size()) != letters) parse_fail("automaton row has the wrong width");
    for (int a = 0; a < letters; ++a) {
      if (row[a].is_null()) continue;
      if (!row[a].is_number_integer()) parse_fail("automaton entries must be state indices or null");
      const int t = row[a].get<int>();
      if (t < 0 || t >= n) parse_fail("automaton entry out of range");
      d.set(s, static_cast<Letter>(a), t);
    }
  }
  return d;
}

Json point_to_json(const Alphabet& alpha, const UPPoint& p) {
  return {{"transient", alpha.format_word(p.transient())}, {"period", alpha.format_word(p.period())}};
}

UPPoint parse_point(const Alphabet& alpha, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) parse_fail("point must be written T,P");
  Word t = word_or_parse_error(alpha, text.substr(0, comma));
  Word p = word_or_parse_error(alpha, text.substr(comma + 1));
  if (p.empty()) parse_fail("point period must be nonempty");
  return UPPoint(std::move(t), std::move(p));
}

namespace {

UPPoint point_from_json(const Alphabet& alpha, const Json& j) {
  if (!j.is_object() || !j.contains("period") || !j["period"].is_string()) parse_fail("point needs a period");
  const std::string t = j.contains("transient") && j["transient"].is_string() ? j["transient"].get<std::string>() : "";
  Word p = word_or_parse_error(alpha, j["period"].get<std::string>());
  if (p.empty()) parse_fail("point period must be nonempty");
  return UPPoint(word_or_parse_error(alpha, t), std::move(p));
}

Scalar coef_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  parse_fail("coef must be a number or [re, im]");
}

TailSet tail_from_json(const Algebra& alg, const Json& j) {
  const Alphabet& alpha = alg.automaton().alphabet();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "S") return alg.lattice().full();
    if (s.size() >= 3 && s.rfind("F(", 0) == 0 && s.back() == ')') {
      const Word w = word_or_parse_error(alpha, s.substr(2, s.size() - 3));
      return alg.lattice().follower(w);
    }
    parse_fail("unknown tail reference '" + s + "'");
  }
  return TailSet::from_dfa(dfa_from_json(j, alg.letters()), 0);
}

Json tail_to_json(const Algebra& alg, const TailSet& e) {
  const auto& aut = alg.automaton();
  if (e == alg.lattice().full()) return "S";
  for (int q = 0; q < aut.num_states(); ++q) {
    if (alg.lattice().follower_state(q) != e) continue;
    // Shortest, then lexicographically least, word reaching q.
    std::vector<Word> frontier{Word{}};
    std::vector<bool> seen(aut.num_states(), false);
    seen[0] = true;
    if (q == 0) return "S";
    while (!frontier.empty()) {
      std::vector<Word> next;
      for (const auto& w : frontier) {
        const int s = aut.state_of(w);
        for (int a = 0; a < aut.letters(); ++a) {
          const int r = aut.step(s, static_cast<Letter>(a));
          if (r == kNoState || seen[r]) continue;
          seen[r] = true;
          Word x = w;
          x.push_back(static_cast<Letter>(a));
          if (r == q) return "F(" + aut.alphabet().format_word(x) + ")";
          next.push_back(std::move(x));
        }
      }
      frontier = std::move(next);
    }
  }
  return dfa_to_json(e.dfa());
}

Element named(const Algebra& alg, const std::string& name) {
  if (name == "one") return alg.one();
  if (name == "v") return alg.v();
  if (name == "m") return alg.m();
  if (name.size() > 2 && name.rfind("p_", 0) == 0) {
    const std::string digits = name.substr(2);
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) || digits.size() > 9)
      parse_fail("bad projection index in '" + name + "'");
    return alg.p(std::stoi(digits));
  }
  parse_fail("unknown named element '" + name + "'");
}

}  // namespace

Json scalar_to_json(Scalar c) { return Json::array({c.real(), c.imag()}); }

Element parse_element(const Algebra& alg, const Json& j) {
  const Alphabet& alpha = alg.automaton().alphabet();
  if (!j.is_object() || !j.contains("sum") || !j["sum"].is_array()) parse_fail("element must be {\"sum\": [...]}");
  Element acc = alg.zero();
  for (const auto& item : j["sum"]) {
    if (!item.is_object()) parse_fail("sum items must be objects");
    const Scalar c = item.contains("coef") ? coef_from_json(item["coef"]) : Scalar(1.0);
    if (item.contains("term")) {
      const auto& t = item["term"];
      if (!t.is_object()) parse_fail("term must be an object");
      const Word u = word_or_parse_error(alpha, t.value("u", ""));
      const Word v = word_or_parse_error(alpha, t.value("v", ""));
      const TailSet e = t.contains("tail") ? tail_from_json(alg, t["tail"]) : alg.lattice().full();
      acc = acc + alg.term(u, v, e, c);
    } else if (item.contains("point")) {
      const auto& p = item["point"];
      if (!p.is_object() || !p.contains("k") || !p["k"].is_number_integer()) parse_fail("point needs an integer k");
      const int k = p["k"].get<int>();
      UPPoint x, y;
      if (p.contains("x")) {
        x = point_from_json(alpha, p["x"]);
        y = p.contains("y") ? point_from_json(alpha, p["y"]) : x;
      } else {
        x = y = point_from_json(alpha, p);
      }
      acc = acc + alg.point(Arrow{x, k, y}, c);
    } else if (item.contains("gen") || item.contains("named")) {
      const std::string g = item.contains("gen") ? item["gen"].get<std::string>() : item["named"].get<std::string>();
      if (g == "t_u") {
        acc = acc + c * alg.t(word_or_parse_error(alpha, item.value("u", "")));
      } else {
        acc = acc + c * named(alg, g);
      }
    } else {
      parse_fail("sum item needs term, point or gen");
    }
  }
  return acc;
}

Json element_to_json(const Algebra& alg, const Element& e) {
  const Alphabet& alpha = alg.automaton().alphabet();
  Json sum = Json::array();
  for (const auto& t : e.term_list())
    sum.push_back({{"coef", scalar_to_json(t.coef)},
                   {"term", {{"u", alpha.format_word(t.u)}, {"v", alpha.format_word(t.v)}, {"tail", tail_to_json(alg, t.tail)}}}});
  for (const auto& [g, c] : e.points()) {
    Json p;
    if (g.x == g.y) {
      p = point_to_json(alpha, g.x);
      p["k"] = g.k;
    } else {
      p = {{"x", point_to_json(alpha, g.x)}, {"k", g.k}, {"y", point_to_json(alpha, g.y)}};
    }
    sum.push_back({{"coef", scalar_to_json(c)}, {"point", p}});
  }
  return {{"sum", sum}};
}

// ---------------------------------------------------------------- expressions

namespace {

struct Value {
  bool scalar = true;
  Scalar c = 0.0;
  Element e;
};

class ExprParser {
 public:
  ExprParser(const Algebra& alg, const std::string& text) : alg_(alg), s_(text) {}

  Element run() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return as_element(v);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { parse_fail(what + " at offset " + std::to_string(pos_)); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Element as_element(const Value& v) const { return v.scalar ? v.c * alg_.one() : v.e; }

  Value add(const Value& a, const Value& b, double sign) const {
    if (a.scalar && b.scalar) return {true, a.c + sign * b.c, {}};
    return {false, 0.0, as_element(a) + Scalar(sign) * as_element(b)};
  }
  Value mul(const Value& a, const Value& b) const {
    if (a.scalar && b.scalar) return {true, a.c * b.c, {}};
    if (a.scalar) return {false, 0.0, a.c * b.e};
    if (b.scalar) return {false, 0.0, b.c * a.e};
    return {false, 0.0, a.e * b.e};
  }
  Value adj(const Value& a) const {
    if (a.scalar) return {true, std::conj(a.c), {}};
    return {false, 0.0, adjoint(a.e)};
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+'))
        v = add(v, term(), 1.0);
      else if (eat('-'))
        v = add(v, term(), -1.0);
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    while (eat('*')) v = mul(v, unary());
    return v;
  }

  Value unary() {
    if (eat('-')) return mul(Value{true, -1.0, {}}, unary());
    if (eat('+')) return unary();
    Value v = primary();
    for (;;) {
      skip();
      if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '*') {
        pos_ += 2;
        v = adj(v);
      } else {
        return v;
      }
    }
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Value primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double x = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return {true, x, {}};
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    if (s_.compare(pos_, 3, "t_{") == 0) {
      pos_ += 3;
      const auto close = s_.find('}', pos_);
      if (close == std::string::npos) fail("unterminated t_{");
      const Word w = word_or_parse_error(alg_.automaton().alphabet(), s_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return {false, 0.0, alg_.t(w)};
    }
    const std::string id = identifier();
    if (id == "adjoint" || id == "adj" || id == "P" || id == "Q" || id == "phi_hat") {
      if (!eat('(')) fail("expected '(' after " + id);
      Value a = expr();
      if (!eat(')')) fail("expected ')'");
      if (id == "adjoint" || id == "adj") return adj(a);
      if (a.scalar && id != "phi_hat") return a;
      const Element e = as_element(a);
      if (id == "P") return {false, 0.0, diag_expectation(e)};
      if (id == "Q") return {false, 0.0, isotropy_expectation(e)};
      return {false, 0.0, alg_.phi_hat(e)};
    }
    if (id == "i") return {true, Scalar(0.0, 1.0), {}};
    if (id.rfind("t_", 0) == 0) {
      const Word w = word_or_parse_error(alg_.automaton().alphabet(), id.substr(2));
      return {false, 0.0, alg_.t(w)};
    }
    if (id == "one" || id == "v" || id == "m" || id.rfind("p_", 0) == 0) return {false, 0.0, named(alg_, id)};
    fail("unknown identifier '" + id + "'");
  }

  const Algebra& alg_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_expression(const Algebra& alg, const std::string& text) { return ExprParser(alg, text).run(); }

Element parse_element_source(const Algebra& alg, const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      parse_fail(std::string("malformed element JSON: ") + e.what());
    }
    return parse_element(alg, j);
  }
  return parse_expression(alg, text);
}

// ---------------------------------------------------------------- config, reports

void RunConfig::apply_environment() {
  if (const char* s = std::getenv("GAMMALG_SEED"); s != nullptr && *s != '\0') {
    try {
      seed = std::stoull(s, nullptr, 0);
    } catch (const std::exception&) {
      throw std::invalid_argument("GAMMALG_SEED is not an integer");
    }
  }
}

void RunConfig::validate() const {
  if (!(drop_eps > 0.0) || !(tolerance > drop_eps)) throw std::invalid_argument("need tolerance > drop_eps > 0");
  if (class_cap < 1) throw std::invalid_argument("class cap must be at least 1");
}

Json RunConfig::to_json() const {
  return {{"tolerance", tolerance},
          {"drop_eps", drop_eps},
          {"class_cap", class_cap},
          {"witness_len_cap", witness_len_cap == 0 ? Json("auto") : Json(witness_len_cap)},
          {"seed", seed}};
}

std::string spec_hash(const Json& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

Json info_report(const FollowerAutomaton& aut, const SubshiftSpec& spec) {
  Json counts = Json::array();
  for (std::size_t n = 0; n <= 8; ++n) counts.push_back(big_to_json(count_words(aut, n).total));
  Json per = Json::object();
  for (std::size_t n = 1; n <= 4; ++n) per[std::to_string(n)] = periodic_points(aut, n).size();
  Json irreducible = nullptr;
  if (std::holds_alternative<SftMatrix>(spec.variant)) irreducible = sft_irreducible(spec);
  const CylinderLattice lattice(aut);
  return {{"alphabet", aut.alphabet().symbols()},
          {"states", aut.num_states()},
          {"transitions", dfa_to_json(aut.dfa())},
          {"word_counts", counts},
          {"periodic_point_counts", per},
          {"aperiodic", exists_aperiodic(aut)},
          {"finite", is_finite(aut)},
          {"sft_irreducible", irreducible},
          {"max_preimages_1", big_to_json(lattice.max_preimages(1))},
          {"warnings", aut.warnings()}};
}

Json verdict_to_json(const Alphabet& alpha, const Verdict& v) {
  auto words = [&](const std::vector<Word>& ws) {
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(alpha.format_word(w));
    return out;
  };
  Json classes = Json::array();
  for (const auto& c : v.classes)
    classes.push_back({{"u", alpha.format_word(c.cls.u)},
                       {"F", words(c.cls.F)},
                       {"tail_states", c.cls.tail.num_states()},
                       {"tail", dfa_to_json(c.cls.tail.dfa())},
                       {"m", c.m ? Json(*c.m) : Json(nullptr)}});
  Json witness = nullptr;
  if (v.witness)
    witness = {{"u", alpha.format_word(v.witness->u)},
               {"F", words(v.witness->F)},
               {"tail", dfa_to_json(v.witness->tail.dfa())},
               {"union", dfa_to_json(v.witness->orbit.dfa())}};
  return {{"algebra", v.algebra == AlgebraKind::OS ? "O_S" : "AF_core"},
          {"status", status_name(v.status)},
          {"classes", classes},
          {"witness", witness},
          {"caps", {{"class_cap", v.class_cap}, {"witness_len_cap", v.witness_len_cap}}},
          {"sampled", v.sampled},
          {"exact", v.algebra == AlgebraKind::AF},
          {"notes", v.notes}};
}

Json make_report(const std::string& command, const Json& spec, const RunConfig& cfg, Json body) {
  return {{"command", command},
          {"version", kVersion},
          {"spec_hash", spec_hash(spec)},
          {"config", cfg.to_json()},
          {"result", std::move(body)}};
}

Json make_error_report(const std::string& command, const RunConfig& cfg, std::string_view kind, const std::string& message) {
  return {{"command", command},
          {"version", kVersion},
          {"config", cfg.to_json()},
          {"error", {{"kind", std::string(kind)}, {"message", message}}}};
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gammalg
