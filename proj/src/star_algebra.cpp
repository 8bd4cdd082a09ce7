#include "gammalg/star_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "gammalg/error.hpp"

namespace gammalg {

namespace {

void accumulate(Element::TermMap& m, TermKey key, TailFunction f) {
  if (f.is_zero()) return;
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(std::move(key), std::move(f));
  } else {
    it->second = it->second + f;
  }
}

void accumulate(Element::PointMap& m, const Arrow& g, Scalar c) { m[g] += c; }

// Splits T(u,v,f) into pieces with |u| = target.
void refine_into(Element::TermMap& out, Word u, Word v, const TailFunction& f, std::size_t target) {
  if (f.is_zero()) return;
  if (u.size() >= target) {
    accumulate(out, TermKey{std::move(u), std::move(v)}, f);
    return;
  }
  for (int a = 0; a < f.letters(); ++a) {
    const Letter letter = static_cast<Letter>(a);
    TailFunction g = f.derivative(WordView(&letter, 1));
    if (g.is_zero()) continue;
    Word ua = u, va = v;
    ua.push_back(letter);
    va.push_back(letter);
    refine_into(out, std::move(ua), std::move(va), g, target);
  }
}

}  // namespace

Element::Element(int letters, TermMap terms, PointMap points) : letters_(letters) {
  std::map<int, std::size_t> length;
  for (const auto& [k, f] : terms) {
    auto& n = length[k.degree()];
    n = std::max(n, k.u.size());
  }
  for (const auto& [k, f] : terms) refine_into(terms_, k.u, k.v, f, length[k.degree()]);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  for (auto& [g, c] : points)
    if (std::abs(c) > kDropEps) points_.emplace(g, c);
}

std::set<int> Element::degrees() const {
  std::set<int> out;
  for (const auto& [k, f] : terms_) out.insert(k.degree());
  for (const auto& [g, c] : points_) out.insert(g.k);
  return out;
}

std::vector<Term> Element::term_list() const {
  std::vector<Term> out;
  for (const auto& [k, f] : terms_)
    for (auto& [c, e] : f.decompose()) out.push_back(Term{c, k.u, k.v, std::move(e)});
  return out;
}

Element canonicalize(const Element& e) { return Element(e.letters(), e.terms(), e.points()); }

Element operator+(const Element& a, const Element& b) {
  Element::TermMap terms = a.terms();
  for (const auto& [k, f] : b.terms()) accumulate(terms, k, f);
  Element::PointMap points = a.points();
  for (const auto& [g, c] : b.points()) accumulate(points, g, c);
  return Element(std::max(a.letters(), b.letters()), std::move(terms), std::move(points));
}

Element operator*(Scalar c, const Element& a) {
  Element::TermMap terms;
  for (const auto& [k, f] : a.terms()) accumulate(terms, k, c * f);
  Element::PointMap points;
  for (const auto& [g, x] : a.points()) points[g] = c * x;
  return Element(a.letters(), std::move(terms), std::move(points));
}

Element operator-(const Element& a, const Element& b) { return a + Scalar(-1.0) * b; }

Element operator*(const Element& a, const Element& b) {
  Element::TermMap terms;
  Element::PointMap points;
  for (const auto& [k1, f] : a.terms())
    for (const auto& [k2, g] : b.terms()) {
      // (u y, ., v y)(w y', ., z y') composes when v y = w y'.
      const Word& u = k1.u;
      const Word& v = k1.v;
      const Word& w = k2.u;
      const Word& z = k2.v;
      if (has_prefix(v, w)) {
        const Word rest = suffix(v, w.size());
        accumulate(terms, TermKey{u, concat(z, rest)}, f * g.derivative(rest));
      } else if (has_prefix(w, v)) {
        const Word rest = suffix(w, v.size());
        accumulate(terms, TermKey{concat(u, rest), z}, f.derivative(rest) * g);
      }
    }
  for (const auto& [p, c] : a.points())
    for (const auto& [k2, g] : b.terms()) {
      if (!p.y.starts_with(k2.u)) continue;
      const UPPoint tail = p.y.shift(k2.u.size());
      const Scalar val = g(tail);
      if (val != Scalar(0.0)) accumulate(points, Arrow{p.x, p.k + k2.degree(), tail.prepend(k2.v)}, c * val);
    }
  for (const auto& [k1, f] : a.terms())
    for (const auto& [p, c] : b.points()) {
      if (!p.x.starts_with(k1.v)) continue;
      const UPPoint tail = p.x.shift(k1.v.size());
      const Scalar val = f(tail);
      if (val != Scalar(0.0)) accumulate(points, Arrow{tail.prepend(k1.u), k1.degree() + p.k, p.y}, val * c);
    }
  for (const auto& [p, c] : a.points())
    for (const auto& [q, d] : b.points())
      if (p.y == q.x) accumulate(points, Arrow{p.x, p.k + q.k, q.y}, c * d);
  return Element(std::max(a.letters(), b.letters()), std::move(terms), std::move(points));
}

Element adjoint(const Element& a) {
  Element::TermMap terms;
  for (const auto& [k, f] : a.terms()) terms.emplace(TermKey{k.v, k.u}, conj(f));
  Element::PointMap points;
  for (const auto& [g, c] : a.points()) points.emplace(g.inverse(), std::conj(c));
  return Element(a.letters(), std::move(terms), std::move(points));
}

Element diag_expectation(const Element& a) {
  Element::TermMap terms;
  for (const auto& [k, f] : a.terms())
    if (k.u == k.v) terms.emplace(k, f);
  Element::PointMap points;
  for (const auto& [g, c] : a.points())
    if (g.k == 0 && g.x == g.y) points.emplace(g, c);
  return Element(a.letters(), std::move(terms), std::move(points));
}

Element isotropy_expectation(const Element& a) {
  Element::TermMap terms;
  Element::PointMap points;
  for (const auto& [k, f] : a.terms()) {
    if (k.u == k.v) {
      terms.emplace(k, f);
      continue;
    }
    // T(u, u·w) meets the isotropy exactly at (u·w^∞, -|w|, u·w^∞); symmetrically for v.
    const bool v_longer = k.v.size() > k.u.size();
    const Word& shorter = v_longer ? k.u : k.v;
    const Word& longer = v_longer ? k.v : k.u;
    if (!has_prefix(longer, shorter)) continue;
    const Word w = suffix(longer, shorter.size());
    const UPPoint tail = UPPoint::periodic(w);
    const Scalar val = f(tail);
    if (val == Scalar(0.0)) continue;
    const UPPoint x = tail.prepend(shorter);
    accumulate(points, Arrow{x, k.degree(), x}, val);
  }
  for (const auto& [g, c] : a.points())
    if (g.x == g.y) accumulate(points, g, c);
  return Element(a.letters(), std::move(terms), std::move(points));
}

Element gauge_act(Scalar z, const Element& a) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw Error(ErrorKind::NotUnitModulus, "gauge parameter must lie on the unit circle");
  auto power = [z](int k) { return k >= 0 ? std::pow(z, k) : std::pow(std::conj(z), -k); };
  Element::TermMap terms;
  for (const auto& [k, f] : a.terms()) terms.emplace(k, power(k.degree()) * f);
  Element::PointMap points;
  for (const auto& [g, c] : a.points()) points.emplace(g, power(g.k) * c);
  return Element(a.letters(), std::move(terms), std::move(points));
}

Element degree_component(int d, const Element& a) {
  Element::TermMap terms;
  for (const auto& [k, f] : a.terms())
    if (k.degree() == d) terms.emplace(k, f);
  Element::PointMap points;
  for (const auto& [g, c] : a.points())
    if (g.k == d) points.emplace(g, c);
  return Element(a.letters(), std::move(terms), std::move(points));
}

Scalar evaluate_unchecked(const Element& a, const Arrow& g) {
  Scalar sum = 0.0;
  for (const auto& [k, f] : a.terms()) {
    if (k.degree() != g.k || !g.x.starts_with(k.u) || !g.y.starts_with(k.v)) continue;
    const UPPoint tail = g.x.shift(k.u.size());
    if (tail != g.y.shift(k.v.size())) continue;
    sum += f(tail);
  }
  if (auto it = a.points().find(g); it != a.points().end()) sum += it->second;
  return sum;
}

double sup_norm(const Element& a) {
  double best = 0.0;
  for (const auto& [g, c] : a.points()) best = std::max(best, std::abs(evaluate_unchecked(a, g)));
  for (const auto& [k, f] : a.terms())
    for (const auto& region : f.regions()) {
      if (region.infinite) {
        best = std::max(best, std::abs(region.value));
        continue;
      }
      // A finite region only counts where no point mass overrides it.
      for (const auto& y : region.points)
        if (!a.points().count(Arrow{y.prepend(k.u), k.degree(), y.prepend(k.v)})) {
          best = std::max(best, std::abs(region.value));
          break;
        }
    }
  return best;
}

bool approx_equal(const Element& a, const Element& b, double tol) { return sup_norm(a - b) <= tol; }

// ---------------------------------------------------------------------------

Algebra::Algebra(const FollowerAutomaton& aut) : lattice_(aut) {
  count1_ = lattice_.preimage_count_function(1);
  m_ = tail_diagonal(count1_);
  const TailFunction inv_sqrt = count1_.map([](Scalar c) { return 1.0 / std::sqrt(c); });
  m_inv_sqrt_ = tail_diagonal(inv_sqrt);
  Element::TermMap vt;
  for (int a = 0; a < letters(); ++a) {
    const Word u{static_cast<Letter>(a)};
    accumulate(vt, TermKey{u, {}}, inv_sqrt.restrict_to(lattice_.follower(u)));
  }
  v_ = Element(letters(), std::move(vt));
}

Element Algebra::tail_diagonal(const TailFunction& f) const {
  Element::TermMap terms;
  for (int a = 0; a < letters(); ++a) {
    const Word u{static_cast<Letter>(a)};
    accumulate(terms, TermKey{u, u}, f.restrict_to(lattice_.follower(u)));
  }
  return Element(letters(), std::move(terms));
}

Element Algebra::one() const { return term({}, {}, lattice_.full()); }

Element Algebra::t(WordView u) const { return term(u, {}, lattice_.follower(u)); }

Element Algebra::term(WordView u, WordView v, const TailSet& e, Scalar c) const {
  return term(u, v, TailFunction::indicator(e, c));
}

Element Algebra::term(WordView u, WordView v, const TailFunction& f) const {
  const TailSet dom = intersect(lattice_.follower(u), lattice_.follower(v));
  Element::TermMap terms;
  accumulate(terms, TermKey{Word(u.begin(), u.end()), Word(v.begin(), v.end())}, f.restrict_to(dom));
  return Element(letters(), std::move(terms));
}

Element Algebra::a_uv(WordView u, WordView v) const { return term(u, v, lattice_.full()); }

Element Algebra::diagonal(const PrefixedSet& s, Scalar c) const { return term(s.prefix, s.prefix, s.tail, c); }

bool Algebra::is_arrow(const Arrow& g) const {
  if (!is_valid(automaton(), g.x) || !is_valid(automaton(), g.y)) return false;
  const Word& p1 = g.x.period();
  const Word& p2 = g.y.period();
  const std::size_t n = p1.size();
  if (p2.size() != n) return false;
  for (std::size_t s = 0; s < n; ++s) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = p1[(s + i) % n] == p2[i];
    if (!same) continue;
    const long long want = static_cast<long long>(g.x.transient().size()) - static_cast<long long>(g.y.transient().size()) + static_cast<long long>(s);
    const long long diff = static_cast<long long>(g.k) - want;
    return ((diff % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n) == 0;
  }
  return false;
}

Scalar Algebra::evaluate(const Element& a, const Arrow& g) const {
  if (!is_arrow(g)) throw Error(ErrorKind::NotAnArrow, "(x,k,y) is not an arrow of the groupoid");
  return evaluate_unchecked(a, g);
}

Element Algebra::point(const Arrow& g, Scalar c) const {
  if (!is_arrow(g)) throw Error(ErrorKind::NotAnArrow, "(x,k,y) is not an arrow of the groupoid");
  return Element(letters(), {}, {{g, c}});
}

Element Algebra::p(int j) const {
  const auto part = lattice_.skl_tail_partition(1);
  auto it = part.find(BigInt(j));
  if (it == part.end()) return zero();
  return tail_diagonal(it->second);
}

Element Algebra::phi_hat(const Element& a) const {
  if (!a.points().empty()) throw Error(ErrorKind::NotCoreElement, "point masses are outside the core");
  Element::TermMap lifted;
  for (const auto& [k, f] : a.terms()) {
    if (k.degree() != 0) throw Error(ErrorKind::NotCoreElement, "element has a term of nonzero degree");
    for (int x = 0; x < letters(); ++x)
      for (int y = 0; y < letters(); ++y) {
        const Word au = concat(Word{static_cast<Letter>(x)}, k.u);
        const Word bv = concat(Word{static_cast<Letter>(y)}, k.v);
        const TailSet dom = intersect(lattice_.follower(au), lattice_.follower(bv));
        if (dom.is_empty()) continue;
        accumulate(lifted, TermKey{au, bv}, f.restrict_to(dom));
      }
  }
  return m_inv_sqrt_ * Element(letters(), std::move(lifted)) * m_inv_sqrt_;
}

Element Algebra::cylinder_projection(WordView u, const std::vector<Word>& others) const {
  Element chain = others.empty() ? a_uv(u, u) : a_uv(u, others.front());
  for (std::size_t i = 1; i < others.size(); ++i) chain = chain * a_uv(others[i - 1], others[i]);
  if (!others.empty()) chain = chain * a_uv(others.back(), u);
  Element lhs = diag_expectation(chain);
  const Element direct = diagonal(lattice_.gen_cylinder_unrestricted(u, others));
  if (!approx_equal(lhs, direct, 1e-9)) throw Error(ErrorKind::Internal, "projection formula disagrees with the cylinder indicator");
  return lhs;
}

}  // namespace gammalg
