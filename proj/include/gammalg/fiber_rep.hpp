#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gammalg/star_algebra.hpp"

namespace gammalg {

/// σ^{-k}(a), ordered by the prefix word.
struct Fiber {
  UPPoint base;
  std::size_t level = 0;
  std::vector<Word> words;
  std::vector<UPPoint> points;

  std::size_t size() const { return points.size(); }
};

struct FiberMatrix {
  Fiber fiber;
  Eigen::MatrixXcd entries;
};

/// Throws InvalidPoint when a ∉ S, BadLength when k = 0.
Fiber fiber(const FollowerAutomaton& aut, const UPPoint& a, std::size_t k);

/// ψ_a(e); throws NotCoreElement or LevelTooLow.
FiberMatrix represent(const Fiber& f, const Element& e);

/// Largest |u| over the terms of a core element; throws NotCoreElement.
std::size_t core_level(const Element& e);

/// Power iteration on M*M (all-ones start, then a fixed pseudorandom start).
/// The result is a Rayleigh-quotient value, hence never above ‖M‖.
double spectral_norm(const Eigen::MatrixXcd& m, double rel_tol = 1e-10, int max_iter = 10000);

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
  BigInt k_max;
  double sup = 0.0;
};

NormBounds norm_bounds(const Algebra& alg, const Element& e, std::size_t k, const std::vector<UPPoint>& samples);

/// Periodic points of period ≤ 4 and eight pseudorandom valid points.
std::vector<UPPoint> default_samples(const FollowerAutomaton& aut, std::uint64_t seed = 0xC0FFEE, std::size_t random_count = 8);

/// Random walk of random length from the root, closed off at the first
/// repeated state; always a valid point.
UPPoint random_point(const FollowerAutomaton& aut, std::mt19937_64& rng, std::size_t max_transient = 4);

struct Compression {
  std::vector<Arrow> basis;
  Eigen::MatrixXcd entries;
  double norm = 0.0;
};

/// Compression of π_x(e) to arrows (y,d,x) with y = w·σ^{j-d}(x), |w| = j ≤ L,
/// |d| ≤ D. Throws BasisOverflow above cap basis arrows.
Compression truncated_pi_x(const FollowerAutomaton& aut, const Element& e, const UPPoint& x, std::size_t level_cap, int degree_cap, std::size_t cap = 5000);

}  // namespace gammalg
