#include "gammalg/tail_set.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gammalg/error.hpp"

namespace gammalg {

namespace {

void check_letters(int a, int b) {
  if (a != b) throw Error(ErrorKind::AlphabetMismatch, "operands use different alphabets");
}

// Pairwise product of two automata explored from (root_a, root_b). A missing
// side is encoded as kNoState. `both` requires both sides to move.
struct PairProduct {
  Dfa dfa;
  std::vector<std::pair<int, int>> states;
};

PairProduct pair_product(const Dfa& a, int root_a, const Dfa& b, int root_b, bool both) {
  PairProduct p{Dfa(a.letters, 0), {}};
  std::map<std::pair<int, int>, int> ids;
  auto id = [&](int x, int y) {
    auto [it, inserted] = ids.try_emplace({x, y}, 0);
    if (inserted) {
      it->second = p.dfa.add_state();
      p.states.emplace_back(x, y);
    }
    return it->second;
  };
  id(root_a, root_b);
  for (std::size_t i = 0; i < p.states.size(); ++i) {
    for (int c = 0; c < a.letters; ++c) {
      const auto [x, y] = p.states[i];
      const int nx = x == kNoState ? kNoState : a.step(x, static_cast<Letter>(c));
      const int ny = y == kNoState ? kNoState : b.step(y, static_cast<Letter>(c));
      if (both ? (nx == kNoState || ny == kNoState) : (nx == kNoState && ny == kNoState)) continue;
      const int t = id(nx, ny);
      p.dfa.set(static_cast<int>(i), static_cast<Letter>(c), t);
    }
  }
  return p;
}

// Removes transitions into states outside keep.
Dfa restrict_states(const Dfa& d, const std::vector<bool>& keep) {
  Dfa out = d;
  for (int s = 0; s < d.size(); ++s)
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t != kNoState && (!keep[t] || !keep[s])) out.set(s, static_cast<Letter>(a), kNoState);
    }
  return out;
}

// Word leading from s back to s inside component c.
Word cycle_word(const Dfa& d, const dfa::Sccs& sccs, int s) {
  const int c = sccs.component[s];
  std::vector<int> parent(d.size(), -2);
  std::vector<Letter> via(d.size(), 0);
  std::deque<int> queue{s};
  parent[s] = -1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(x, static_cast<Letter>(a));
      if (t == kNoState || sccs.component[t] != c) continue;
      if (t == s) {
        Word w{static_cast<Letter>(a)};
        for (int y = x; y != s; y = parent[y]) w.push_back(via[y]);
        std::reverse(w.begin(), w.end());
        return w;
      }
      if (parent[t] != -2) continue;
      parent[t] = x;
      via[t] = static_cast<Letter>(a);
      queue.push_back(t);
    }
  }
  throw Error(ErrorKind::Internal, "state is not on a cycle");
}

}  // namespace

TailSet TailSet::empty(int letters) {
  TailSet e;
  e.dfa_ = Dfa(letters, 0);
  return e;
}

TailSet TailSet::from_dfa(const Dfa& d, int root) {
  TailSet e;
  e.dfa_ = dfa::canonical(d, root);
  return e;
}

bool TailSet::contains(const UPPoint& p) const {
  return dfa::run_point(dfa_, 0, p.transient(), p.period()) != kNoState;
}

TailSet intersect(const TailSet& e, const TailSet& g) {
  check_letters(e.letters(), g.letters());
  if (e.is_empty() || g.is_empty()) return TailSet::empty(e.letters());
  const auto p = pair_product(e.dfa(), 0, g.dfa(), 0, true);
  return TailSet::from_dfa(p.dfa, 0);
}

TailSet unite(const TailSet& e, const TailSet& g) {
  check_letters(e.letters(), g.letters());
  if (e.is_empty()) return g;
  if (g.is_empty()) return e;
  const auto p = pair_product(e.dfa(), 0, g.dfa(), 0, false);
  return TailSet::from_dfa(p.dfa, 0);
}

TailSet relative_complement(const TailSet& e, const TailSet& g) {
  check_letters(e.letters(), g.letters());
  if (e.is_empty() || g.is_empty()) return e;
  // Follow e, tracking g until it dies; keep what can still leave g.
  auto p = pair_product(e.dfa(), 0, g.dfa(), 0, false);
  std::vector<bool> escaped(p.dfa.size(), false);
  for (int s = 0; s < p.dfa.size(); ++s) escaped[s] = p.states[s].first != kNoState && p.states[s].second == kNoState;
  // Drop moves where e itself dies.
  for (int s = 0; s < p.dfa.size(); ++s)
    for (int a = 0; a < p.dfa.letters; ++a) {
      const int t = p.dfa.step(s, static_cast<Letter>(a));
      if (t != kNoState && p.states[t].first == kNoState) p.dfa.set(s, static_cast<Letter>(a), kNoState);
    }
  const auto keep = dfa::can_reach(p.dfa, escaped);
  if (!keep[0]) return TailSet::empty(e.letters());
  return TailSet::from_dfa(restrict_states(p.dfa, keep), 0);
}

bool is_subset(const TailSet& e, const TailSet& g) { return intersect(e, g) == e; }

TailSet shift_image(const TailSet& e) {
  if (e.is_empty()) return e;
  const Dfa& d = e.dfa();
  std::vector<int> start;
  for (int a = 0; a < d.letters; ++a) {
    const int t = d.step(0, static_cast<Letter>(a));
    if (t != kNoState) start.push_back(t);
  }
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  Dfa out(d.letters, 0);
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets{start};
  ids[start] = out.add_state();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int a = 0; a < d.letters; ++a) {
      std::vector<int> target;
      for (int s : sets[i]) {
        const int t = d.step(s, static_cast<Letter>(a));
        if (t != kNoState) target.push_back(t);
      }
      if (target.empty()) continue;
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      auto [it, inserted] = ids.try_emplace(target, 0);
      if (inserted) {
        it->second = out.add_state();
        sets.push_back(target);
      }
      out.set(static_cast<int>(i), static_cast<Letter>(a), it->second);
    }
  return TailSet::from_dfa(out, 0);
}

TailSet derivative(const TailSet& e, WordView w) {
  if (e.is_empty()) return e;
  const int s = e.dfa().run(0, w);
  if (s == kNoState) return TailSet::empty(e.letters());
  return TailSet::from_dfa(e.dfa(), s);
}

TailSet prepend(WordView w, const TailSet& e) {
  if (e.is_empty() || w.empty()) return e;
  const int k = static_cast<int>(w.size());
  Dfa d(e.letters(), k + e.num_states());
  for (int i = 0; i < k; ++i) d.set(i, w[i], i + 1);
  for (int s = 0; s < e.num_states(); ++s)
    for (int a = 0; a < e.letters(); ++a) {
      const int t = e.dfa().step(s, static_cast<Letter>(a));
      if (t != kNoState) d.set(k + s, static_cast<Letter>(a), k + t);
    }
  return TailSet::from_dfa(d, 0);
}

namespace {

// Points of the runs that eventually stay in `component`, when that region is
// finite. Paths are explored through states that can reach the component.
std::optional<std::vector<UPPoint>> region_points(const Dfa& d, const dfa::Sccs& sccs, int component, std::size_t limit) {
  if (!sccs.simple[component]) return std::nullopt;
  std::vector<bool> target(d.size(), false);
  for (int s = 0; s < d.size(); ++s) target[s] = sccs.component[s] == component;
  const auto reach = dfa::can_reach(d, target);
  for (int s = 0; s < d.size(); ++s)
    if (reach[s] && !target[s] && sccs.cyclic[sccs.component[s]]) return std::nullopt;
  std::vector<UPPoint> out;
  Word prefix;
  bool overflow = false;
  auto rec = [&](auto&& self, int s) -> void {
    if (overflow) return;
    if (target[s]) {
      if (out.size() >= limit) {
        overflow = true;
        return;
      }
      out.emplace_back(prefix, cycle_word(d, sccs, s));
      return;
    }
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t == kNoState || !reach[t]) continue;
      prefix.push_back(static_cast<Letter>(a));
      self(self, t);
      prefix.pop_back();
    }
  };
  if (reach[0]) rec(rec, 0);
  if (overflow) return std::nullopt;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<UPPoint>> enumerate_if_finite(const TailSet& e, std::size_t limit) {
  if (e.is_empty()) return std::vector<UPPoint>{};
  const auto sccs = dfa::strongly_connected(e.dfa());
  std::vector<UPPoint> all;
  for (int c = 0; c < sccs.count; ++c) {
    if (!sccs.cyclic[c]) continue;
    auto pts = region_points(e.dfa(), sccs, c, limit);
    if (!pts) return std::nullopt;
    all.insert(all.end(), pts->begin(), pts->end());
    if (all.size() > limit) return std::nullopt;
  }
  std::sort(all.begin(), all.end());
  return all;
}

// ---------------------------------------------------------------------------
// TailFunction

TailFunction TailFunction::zero(int letters) {
  TailFunction f;
  f.dfa_ = Dfa(letters, 0);
  return f;
}

TailFunction TailFunction::indicator(const TailSet& e, Scalar c) {
  if (e.is_empty() || std::abs(c) <= kDropEps) return zero(e.letters());
  TailFunction f;
  f.dfa_ = e.dfa();
  const auto sccs = dfa::strongly_connected(f.dfa_);
  f.out_.assign(f.dfa_.size(), 0.0);
  for (int s = 0; s < f.dfa_.size(); ++s)
    if (sccs.cyclic[sccs.component[s]]) f.out_[s] = c;
  return f;
}

TailFunction TailFunction::from_automaton(const Dfa& d0, int root, const std::vector<Scalar>& outputs, double eps) {
  const int letters = d0.letters;
  if (root == kNoState || d0.size() == 0) return zero(letters);
  const auto live0 = dfa::live_states(d0);
  if (!live0[root]) return zero(letters);
  std::vector<int> map0;
  Dfa d = dfa::bfs_relabel(d0, root, live0, &map0);
  std::vector<Scalar> val(d.size(), 0.0);
  for (int s = 0; s < d0.size(); ++s)
    if (map0[s] != kNoState) val[map0[s]] = outputs[s];

  // Outputs on cyclic components; transient states carry 0.
  auto sccs = dfa::strongly_connected(d);
  {
    std::vector<Scalar> comp_value(sccs.count, 0.0);
    std::vector<bool> seen(sccs.count, false);
    for (int s = 0; s < d.size(); ++s) {
      const int c = sccs.component[s];
      if (sccs.cyclic[c] && !seen[c]) {
        seen[c] = true;
        comp_value[c] = std::abs(val[s]) > eps ? val[s] : Scalar(0.0);
      }
    }
    for (int s = 0; s < d.size(); ++s) val[s] = sccs.cyclic[sccs.component[s]] ? comp_value[sccs.component[s]] : Scalar(0.0);
  }

  // Drop states whose function vanishes identically.
  std::vector<bool> nonzero(d.size(), false);
  for (int s = 0; s < d.size(); ++s) nonzero[s] = val[s] != Scalar(0.0);
  const auto keep = dfa::can_reach(d, nonzero);
  if (!keep[0]) return zero(letters);
  std::vector<int> map1;
  d = dfa::bfs_relabel(d, 0, keep, &map1);
  {
    std::vector<Scalar> v(d.size());
    for (std::size_t s = 0; s < map1.size(); ++s)
      if (map1[s] != kNoState) v[map1[s]] = val[s];
    val = std::move(v);
  }
  const int n = d.size();
  sccs = dfa::strongly_connected(d);

  // Same transition domains everywhere.
  const auto block = dfa::refine(d, std::vector<int>(n, 0));

  // Pairs of states in one block; a pair is inequivalent when it can reach a
  // cycle of pairs whose outputs differ.
  std::map<std::pair<int, int>, int> pair_id;
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (block[p] == block[q]) {
        pair_id[{p, q}] = static_cast<int>(pairs.size());
        pairs.emplace_back(p, q);
      }
  Dfa pg(letters, static_cast<int>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (int a = 0; a < letters; ++a) {
      int x = d.step(pairs[i].first, static_cast<Letter>(a));
      int y = d.step(pairs[i].second, static_cast<Letter>(a));
      if (x == kNoState || x == y) continue;
      if (x > y) std::swap(x, y);
      pg.set(static_cast<int>(i), static_cast<Letter>(a), pair_id.at({x, y}));
    }
  const auto psccs = dfa::strongly_connected(pg);
  std::vector<bool> bad(pairs.size(), false);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    bad[i] = psccs.cyclic[psccs.component[i]] && std::abs(val[pairs[i].first] - val[pairs[i].second]) > eps;
  const auto distinct = dfa::can_reach(pg, bad);

  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int s = 0; s < n; ++s) {
    for (int r : reps)
      if (block[r] == block[s] && !distinct[pair_id.at({r, s})]) {
        cls[s] = cls[r];
        break;
      }
    if (cls[s] == -1) {
      cls[s] = static_cast<int>(reps.size());
      reps.push_back(s);
    }
  }
  Dfa q = dfa::quotient(d, cls);
  const auto qsccs = dfa::strongly_connected(q);
  std::vector<Scalar> qval(q.size(), 0.0);
  std::vector<bool> done(qsccs.count, false);
  std::vector<Scalar> comp_val(qsccs.count, 0.0);
  for (int k = 0; k < q.size(); ++k) {
    const int c = qsccs.component[k];
    if (!qsccs.cyclic[c]) continue;
    if (!done[c]) {
      done[c] = true;
      const Word w = cycle_word(q, qsccs, k);
      const int s = dfa::run_point(d, reps[k], {}, w);
      comp_val[c] = s == kNoState ? Scalar(0.0) : val[s];
    }
    qval[k] = comp_val[c];
  }
  std::vector<int> map2;
  TailFunction f;
  f.dfa_ = dfa::bfs_relabel(q, cls[0], std::vector<bool>(q.size(), true), &map2);
  f.out_.assign(f.dfa_.size(), 0.0);
  for (int k = 0; k < q.size(); ++k)
    if (map2[k] != kNoState) f.out_[map2[k]] = qval[k];
  return f;
}

Scalar TailFunction::operator()(const UPPoint& y) const {
  const int s = dfa::run_point(dfa_, 0, y.transient(), y.period());
  return s == kNoState ? Scalar(0.0) : out_[s];
}

TailFunction TailFunction::derivative(WordView w) const {
  if (is_zero()) return *this;
  const int s = dfa_.run(0, w);
  if (s == kNoState) return zero(letters());
  if (w.empty()) return *this;
  return from_automaton(dfa_, s, out_);
}

TailSet TailFunction::support() const {
  if (is_zero()) return TailSet::empty(letters());
  return TailSet::from_dfa(dfa_, 0);
}

TailFunction TailFunction::restrict_to(const TailSet& e) const { return *this * indicator(e); }

double TailFunction::sup_abs() const {
  double m = 0.0;
  for (const auto& v : out_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Scalar> TailFunction::values() const {
  std::vector<Scalar> out;
  const auto sccs = dfa::strongly_connected(dfa_);
  std::vector<bool> seen(sccs.count, false);
  for (int s = 0; s < dfa_.size(); ++s) {
    const int c = sccs.component[s];
    if (sccs.cyclic[c] && !seen[c]) {
      seen[c] = true;
      out.push_back(out_[s]);
    }
  }
  return out;
}

TailFunction TailFunction::map(const std::function<Scalar(Scalar)>& fn, double eps) const {
  if (is_zero()) return *this;
  std::vector<Scalar> v(out_.size());
  const auto sccs = dfa::strongly_connected(dfa_);
  for (std::size_t s = 0; s < out_.size(); ++s)
    v[s] = sccs.cyclic[sccs.component[s]] ? fn(out_[s]) : Scalar(0.0);
  return from_automaton(dfa_, 0, v, eps);
}

std::vector<std::pair<Scalar, TailSet>> TailFunction::decompose() const {
  std::vector<std::pair<Scalar, TailSet>> out;
  if (is_zero()) return out;
  const auto sccs = dfa::strongly_connected(dfa_);
  const int n = dfa_.size();
  // reach_to[c][s]: state s can reach component c.
  std::vector<std::vector<bool>> reach_to(sccs.count);
  std::vector<Scalar> comp_val(sccs.count, 0.0);
  for (int s = 0; s < n; ++s) comp_val[sccs.component[s]] = out_[s];
  std::vector<Scalar> coef(sccs.count, 0.0);
  // Components are numbered sinks first, so everything below c is settled.
  for (int c = 0; c < sccs.count; ++c) {
    if (!sccs.cyclic[c]) continue;
    std::vector<bool> target(n, false);
    for (int s = 0; s < n; ++s) target[s] = sccs.component[s] == c;
    reach_to[c] = dfa::can_reach(dfa_, target);
    Scalar sum = 0.0;
    for (int e = 0; e < c; ++e) {
      if (!sccs.cyclic[e]) continue;
      bool reaches = false;
      for (int s = 0; s < n && !reaches; ++s) reaches = sccs.component[s] == c && reach_to[e][s];
      if (reaches) sum += coef[e];
    }
    coef[c] = comp_val[c] - sum;
  }
  for (int c = sccs.count - 1; c >= 0; --c) {
    if (!sccs.cyclic[c] || std::abs(coef[c]) <= kDropEps) continue;
    out.emplace_back(coef[c], TailSet::from_dfa(restrict_states(dfa_, reach_to[c]), 0));
  }
  return out;
}

std::vector<TailFunction::Region> TailFunction::regions(std::size_t limit) const {
  std::vector<Region> out;
  if (is_zero()) return out;
  const auto sccs = dfa::strongly_connected(dfa_);
  for (int c = 0; c < sccs.count; ++c) {
    if (!sccs.cyclic[c]) continue;
    Scalar v = 0.0;
    for (int s = 0; s < dfa_.size(); ++s)
      if (sccs.component[s] == c) v = out_[s];
    auto pts = region_points(dfa_, sccs, c, limit);
    out.push_back(Region{v, !pts.has_value(), pts ? std::move(*pts) : std::vector<UPPoint>{}});
  }
  return out;
}

namespace {

TailFunction combine(const TailFunction& f, const TailFunction& g, bool product) {
  check_letters(f.letters(), g.letters());
  const auto p = pair_product(f.dfa(), 0, g.dfa(), 0, product);
  std::vector<Scalar> out(p.dfa.size());
  for (int s = 0; s < p.dfa.size(); ++s) {
    const auto [x, y] = p.states[s];
    const Scalar a = x == kNoState ? Scalar(0.0) : f.outputs()[x];
    const Scalar b = y == kNoState ? Scalar(0.0) : g.outputs()[y];
    out[s] = product ? a * b : a + b;
  }
  return TailFunction::from_automaton(p.dfa, 0, out);
}

}  // namespace

TailFunction operator+(const TailFunction& f, const TailFunction& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  return combine(f, g, false);
}

TailFunction operator*(const TailFunction& f, const TailFunction& g) {
  if (f.is_zero()) return f;
  if (g.is_zero()) return g;
  return combine(f, g, true);
}

TailFunction operator*(Scalar c, const TailFunction& f) {
  if (std::abs(c) <= kDropEps) return TailFunction::zero(f.letters());
  return f.map([c](Scalar v) { return c * v; });
}

TailFunction operator-(const TailFunction& f, const TailFunction& g) { return f + Scalar(-1.0) * g; }

TailFunction conj(const TailFunction& f) {
  return f.map([](Scalar v) { return std::conj(v); });
}

bool approx_equal(const TailFunction& f, const TailFunction& g, double tol) { return (f - g).sup_abs() <= tol; }

}  // namespace gammalg
