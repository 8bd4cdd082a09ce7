#include "gammalg/fiber_rep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gammalg/error.hpp"

namespace gammalg {

Fiber fiber(const FollowerAutomaton& aut, const UPPoint& a, std::size_t k) {
  if (!is_valid(aut, a)) throw Error(ErrorKind::InvalidPoint, "base point is not in the shift");
  if (k == 0) throw Error(ErrorKind::BadLength, "fiber level must be at least 1");
  const CylinderLattice lattice(aut);
  Fiber f{a, k, {}, {}};
  // Depth-first in lexicographic order, pruned by automaton state.
  std::vector<std::pair<Word, int>> stack{{Word{}, FollowerAutomaton::root()}};
  while (!stack.empty()) {
    auto [w, q] = std::move(stack.back());
    stack.pop_back();
    if (w.size() == k) {
      if (lattice.follower_state(q).contains(a)) {
        f.points.push_back(a.prepend(w));
        f.words.push_back(std::move(w));
      }
      continue;
    }
    for (int b = aut.letters() - 1; b >= 0; --b) {
      const int r = aut.step(q, static_cast<Letter>(b));
      if (r == kNoState) continue;
      Word next = w;
      next.push_back(static_cast<Letter>(b));
      stack.emplace_back(std::move(next), r);
    }
  }
  return f;
}

std::size_t core_level(const Element& e) {
  if (!e.points().empty()) throw Error(ErrorKind::NotCoreElement, "point masses are outside the core");
  std::size_t level = 0;
  for (const auto& [k, f] : e.terms()) {
    if (k.degree() != 0) throw Error(ErrorKind::NotCoreElement, "element has a term of nonzero degree");
    level = std::max(level, k.u.size());
  }
  return level;
}

FiberMatrix represent(const Fiber& f, const Element& e) {
  if (core_level(e) > f.level) throw Error(ErrorKind::LevelTooLow, "element level exceeds the fiber level");
  const auto n = static_cast<Eigen::Index>(f.size());
  FiberMatrix out{f, Eigen::MatrixXcd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.entries(i, j) = evaluate_unchecked(e, Arrow{f.points[i], 0, f.points[j]});
  return out;
}

namespace {

double power_iteration(const Eigen::MatrixXcd& m, Eigen::VectorXcd x, double rel_tol, int max_iter) {
  double estimate = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double nx = x.norm();
    if (nx == 0.0) return estimate;
    x /= nx;
    const Eigen::VectorXcd y = m * x;
    const double value = y.norm();
    const Eigen::VectorXcd z = m.adjoint() * y;
    const bool done = it > 0 && std::abs(value - estimate) <= rel_tol * std::max(value, 1e-300);
    estimate = std::max(estimate, value);
    if (done) break;
    x = z;
  }
  return estimate;
}

}  // namespace

double spectral_norm(const Eigen::MatrixXcd& m, double rel_tol, int max_iter) {
  if (m.size() == 0) return 0.0;
  const Eigen::Index n = m.cols();
  double best = power_iteration(m, Eigen::VectorXcd::Ones(n), rel_tol, max_iter);
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXcd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = Scalar(unit(rng), unit(rng));
  return std::max(best, power_iteration(m, start, rel_tol, max_iter));
}

NormBounds norm_bounds(const Algebra& alg, const Element& e, std::size_t k, const std::vector<UPPoint>& samples) {
  if (core_level(e) > k) throw Error(ErrorKind::LevelTooLow, "element level exceeds the requested level");
  NormBounds b;
  b.k_max = alg.lattice().max_preimages(k);
  b.sup = sup_norm(e);
  b.upper = b.k_max.convert_to<double>() * b.sup;
  for (const auto& a : samples) b.lower = std::max(b.lower, spectral_norm(represent(fiber(alg.automaton(), a, k), e).entries));
  // Rounding in the matrix entries can push the estimate a few ulps past K·sup.
  if (b.lower > b.upper && b.lower - b.upper <= 1e-12 * std::max(1.0, b.upper)) b.lower = b.upper;
  return b;
}

UPPoint random_point(const FollowerAutomaton& aut, std::mt19937_64& rng, std::size_t max_transient) {
  std::vector<int> states{FollowerAutomaton::root()};
  Word w;
  const std::size_t t = std::uniform_int_distribution<std::size_t>(0, max_transient)(rng);
  std::map<int, std::size_t> seen;
  for (;;) {
    const int q = states.back();
    if (w.size() >= t) {
      auto [it, fresh] = seen.emplace(q, w.size());
      if (!fresh) return UPPoint(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(it->second)), Word(w.begin() + static_cast<std::ptrdiff_t>(it->second), w.end()));
    }
    std::vector<Letter> options;
    for (int b = 0; b < aut.letters(); ++b)
      if (aut.step(q, static_cast<Letter>(b)) != kNoState) options.push_back(static_cast<Letter>(b));
    const Letter b = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    w.push_back(b);
    states.push_back(aut.step(q, b));
  }
}

std::vector<UPPoint> default_samples(const FollowerAutomaton& aut, std::uint64_t seed, std::size_t random_count) {
  std::set<UPPoint> pts;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto per = periodic_points(aut, n);
    pts.insert(per.begin(), per.end());
  }
  std::vector<UPPoint> out(pts.begin(), pts.end());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) out.push_back(random_point(aut, rng));
  return out;
}

Compression truncated_pi_x(const FollowerAutomaton& aut, const Element& e, const UPPoint& x, std::size_t level_cap, int degree_cap, std::size_t cap) {
  if (!is_valid(aut, x)) throw Error(ErrorKind::InvalidPoint, "base point is not in the shift");
  const CylinderLattice lattice(aut);
  std::set<Arrow> basis;
  for (std::size_t j = 0; j <= level_cap; ++j) {
    const auto words = words_of_length(aut, j);
    for (int d = -degree_cap; d <= degree_cap; ++d) {
      const long long b = static_cast<long long>(j) - d;
      if (b < 0) continue;
      const UPPoint target = x.shift(static_cast<std::size_t>(b));
      for (const auto& w : words) {
        if (!lattice.follower_state(aut.state_of(w)).contains(target)) continue;
        basis.insert(Arrow{target.prepend(w), d, x});
        if (basis.size() > cap) throw Error(ErrorKind::BasisOverflow, "truncated basis exceeds " + std::to_string(cap) + " arrows");
      }
    }
  }
  Compression c;
  c.basis.assign(basis.begin(), basis.end());
  const auto n = static_cast<Eigen::Index>(c.basis.size());
  c.entries = Eigen::MatrixXcd::Zero(n, n);
  const auto degrees = e.degrees();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const int d = c.basis[i].k - c.basis[j].k;
      if (!degrees.count(d)) continue;
      c.entries(i, j) = evaluate_unchecked(e, Arrow{c.basis[i].x, d, c.basis[j].x});
    }
  c.norm = spectral_norm(c.entries);
  return c;
}

}  // namespace gammalg
