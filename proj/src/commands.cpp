#include "gammalg/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace gammalg {

namespace {

struct Loaded {
  SubshiftSpec spec;
  FollowerAutomaton aut;
  Json spec_json;
};

Loaded load(const std::string& path) {
  SubshiftSpec spec = load_spec(path);
  FollowerAutomaton aut = compile(spec);
  Json j = spec_to_json(spec);
  return {std::move(spec), std::move(aut), std::move(j)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
  return x;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

std::string fmt(Scalar c) {
  if (c.imag() == 0.0) return fmt(c.real());
  return fmt(c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt(std::abs(c.imag())) + "i";
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return 2;
    case ErrorKind::EmptyShift: return 3;
    case ErrorKind::ParseError: return 4;
    case ErrorKind::NotApplicable: return 12;
    default: return 5;
  }
}

std::string read_source(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CommandResult run_info(const std::string& spec_path, const RunConfig& cfg) {
  const Loaded l = load(spec_path);
  Json body = info_report(l.aut, l.spec);
  std::ostringstream s;
  s << "states: " << body["states"] << "\nword counts (n=0..8): " << body["word_counts"].dump()
    << "\nperiodic points (n=1..4): " << body["periodic_point_counts"].dump() << "\naperiodic: " << body["aperiodic"]
    << "\nsft irreducible: " << body["sft_irreducible"] << "\n";
  return {make_report("info", l.spec_json, cfg, std::move(body)), 0, s.str()};
}

CommandResult run_check_simple(const std::string& spec_path, AlgebraKind kind, const RunConfig& cfg) {
  const Loaded l = load(spec_path);
  DeciderConfig dc;
  dc.class_cap = cfg.class_cap;
  dc.witness_len_cap = cfg.witness_len_cap;
  const char* name = kind == AlgebraKind::OS ? "O_S" : "AF_core";
  try {
    const Verdict v = kind == AlgebraKind::OS ? decide_gamma_simple(l.aut, dc) : decide_af_simple(l.aut, dc);
    Json body = verdict_to_json(l.aut.alphabet(), v);
    const int code = v.status == Status::Simple ? 0 : v.status == Status::NotSimple ? 10 : 11;
    std::string summary = std::string(name) + ": " + std::string(status_name(v.status)) + "\n";
    if (v.witness)
      summary += "witness: u = " + l.aut.alphabet().format_word(v.witness->u) + ", F = " + body["witness"]["F"].dump() + "\n";
    for (const auto& n : v.notes) summary += n + "\n";
    return {make_report("check-simple", l.spec_json, cfg, std::move(body)), code, summary};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotApplicable) throw;
    Json body = {{"algebra", name}, {"status", "not_applicable"}, {"reason", e.what()}};
    return {make_report("check-simple", l.spec_json, cfg, std::move(body)), 12, std::string(name) + ": not applicable (" + e.what() + ")\n"};
  }
}

CommandResult run_algebra(const std::string& spec_path, const std::vector<std::string>& exprs, const std::string& op, const RunConfig& cfg) {
  const Loaded l = load(spec_path);
  const Algebra alg(l.aut);
  if (exprs.empty()) throw Error(ErrorKind::ParseError, "no expression given");
  std::vector<Element> elems;
  Json texts = Json::array();
  for (const auto& e : exprs) {
    const std::string src = read_source(e);
    texts.push_back(src);
    elems.push_back(parse_element_source(alg, src));
  }
  Json result;
  std::string summary;
  auto element_result = [&](const Element& e) {
    result = {{"element", element_to_json(alg, e)}, {"sup_norm", sup_norm(e)}};
    summary = std::to_string(e.term_list().size()) + " term(s), " + std::to_string(e.points().size()) +
              " point mass(es), sup norm " + fmt(sup_norm(e)) + "\n" + result["element"].dump(2) + "\n";
  };
  if (op.empty()) {
    element_result(elems.front());
  } else if (op == "mul") {
    Element acc = elems.front();
    for (std::size_t i = 1; i < elems.size(); ++i) acc = acc * elems[i];
    element_result(acc);
  } else if (op == "adjoint") {
    element_result(adjoint(elems.front()));
  } else if (op == "P") {
    element_result(diag_expectation(elems.front()));
  } else if (op == "Q") {
    element_result(isotropy_expectation(elems.front()));
  } else if (op == "phi_hat") {
    element_result(alg.phi_hat(elems.front()));
  } else if (op.rfind("gauge:", 0) == 0) {
    const auto parts = split(op.substr(6), ',');
    if (parts.size() > 2) throw Error(ErrorKind::ParseError, "gauge parameter must be re or re,im");
    const Scalar z(to_double(parts[0]), parts.size() == 2 ? to_double(parts[1]) : 0.0);
    element_result(gauge_act(z, elems.front()));
  } else if (op.rfind("eval:", 0) == 0) {
    const auto parts = split(op.substr(5), ',');
    if (parts.size() != 5) throw Error(ErrorKind::ParseError, "eval needs xT,xP,k,yT,yP");
    const Alphabet& a = l.aut.alphabet();
    const UPPoint x = parse_point(a, parts[0] + "," + parts[1]);
    const UPPoint y = parse_point(a, parts[3] + "," + parts[4]);
    const Scalar c = alg.evaluate(elems.front(), Arrow{x, static_cast<int>(to_double(parts[2])), y});
    result = {{"scalar", scalar_to_json(c)}};
    summary = fmt(c) + "\n";
  } else if (op == "supnorm") {
    const double s = sup_norm(elems.front());
    result = {{"value", s}};
    summary = fmt(s) + "\n";
  } else {
    throw Error(ErrorKind::ParseError, "unknown op '" + op + "'");
  }
  Json body = {{"expressions", texts}, {"op", op.empty() ? Json(nullptr) : Json(op)}, {"result", result}};
  return {make_report("algebra", l.spec_json, cfg, std::move(body)), 0, summary};
}

CommandResult run_fiber(const std::string& spec_path, const std::string& point, std::size_t level, const std::string& expr, const RunConfig& cfg) {
  const Loaded l = load(spec_path);
  const Algebra alg(l.aut);
  const Alphabet& a = l.aut.alphabet();
  const std::string src = read_source(expr);
  const Element e = parse_element_source(alg, src);
  const Fiber f = fiber(l.aut, parse_point(a, point), level);
  const FiberMatrix fm = represent(f, e);
  Json labels = Json::array();
  for (const auto& p : f.points) labels.push_back(point_to_json(a, p));
  Json rows = Json::array();
  std::ostringstream s;
  s << f.size() << " fiber point(s)\n";
  for (Eigen::Index i = 0; i < fm.entries.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < fm.entries.cols(); ++j) {
      row.push_back(scalar_to_json(fm.entries(i, j)));
      s << (j ? "  " : "") << fmt(fm.entries(i, j));
    }
    rows.push_back(row);
    s << "\n";
  }
  Json body = {{"expression", src}, {"base", point_to_json(a, f.base)}, {"level", level}, {"points", labels}, {"matrix", rows}};
  return {make_report("fiber", l.spec_json, cfg, std::move(body)), 0, s.str()};
}

CommandResult run_norm(const std::string& spec_path, const std::string& expr, std::optional<std::size_t> level, std::size_t samples,
                       const std::optional<std::string>& point, const RunConfig& cfg) {
  const Loaded l = load(spec_path);
  const Algebra alg(l.aut);
  const Alphabet& a = l.aut.alphabet();
  const std::string src = read_source(expr);
  const Element e = parse_element_source(alg, src);
  const std::vector<UPPoint> pts = default_samples(l.aut, cfg.seed, samples);
  bool core = true;
  std::size_t k = 1;
  try {
    k = std::max<std::size_t>(core_level(e), 1);
  } catch (const Error&) {
    core = false;
  }
  if (level) k = *level;
  const UPPoint base = point ? parse_point(a, *point) : pts.front();
  const Compression c = truncated_pi_x(l.aut, e, base, k, static_cast<int>(k));
  Json body = {{"expression", src}, {"level", k}, {"sup_norm", sup_norm(e)}, {"samples", pts.size()}};
  body["pi_x"] = {{"base", point_to_json(a, base)}, {"level_cap", k}, {"degree_cap", k}, {"basis", c.basis.size()}, {"norm", c.norm}};
  double lower = c.norm;
  if (core) {
    const NormBounds b = norm_bounds(alg, e, k, pts);
    body["k_max"] = b.k_max.convert_to<std::int64_t>();
    body["fiber_lower"] = b.lower;
    body["upper"] = b.upper;
    lower = std::max(lower, b.lower);
  } else {
    body["k_max"] = nullptr;
    body["fiber_lower"] = nullptr;
    body["upper"] = nullptr;
  }
  body["lower"] = lower;
  std::string summary = "lower " + fmt(lower) + ", upper " + (core ? fmt(body["upper"].get<double>()) : std::string("n/a")) + "\n";
  return {make_report("norm", l.spec_json, cfg, std::move(body)), 0, summary};
}

}  // namespace gammalg
