#pragma once

#include <compare>
#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gammalg/dfa.hpp"
#include "gammalg/up_point.hpp"

namespace gammalg {

using Scalar = std::complex<double>;

inline constexpr double kDropEps = 1e-12;

/// Closed subset of the sequence space, stored as the canonical minimal
/// acceptor of its prefix language. The empty set is the acceptor with no
/// states. Equality is structural.
class TailSet {
 public:
  TailSet() = default;
  static TailSet empty(int letters);
  /// Canonicalizes the prefix language read from root (dead ends removed).
  static TailSet from_dfa(const Dfa& d, int root);

  int letters() const { return dfa_.letters; }
  bool is_empty() const { return dfa_.size() == 0; }
  const Dfa& dfa() const { return dfa_; }
  int num_states() const { return dfa_.size(); }

  bool contains_prefix(WordView w) const { return !is_empty() && dfa_.run(0, w) != kNoState; }
  bool contains(const UPPoint& p) const;

  auto operator<=>(const TailSet&) const = default;
  bool operator==(const TailSet&) const = default;

 private:
  Dfa dfa_;
};

TailSet intersect(const TailSet& e, const TailSet& g);
TailSet unite(const TailSet& e, const TailSet& g);
/// Closure of e \ g.
TailSet relative_complement(const TailSet& e, const TailSet& g);
bool is_subset(const TailSet& e, const TailSet& g);
/// σ(E).
TailSet shift_image(const TailSet& e);
/// {y : w·y ∈ E}.
TailSet derivative(const TailSet& e, WordView w);
/// w·E as a closed set.
TailSet prepend(WordView w, const TailSet& e);

/// Finite list of points when the set is finite, nullopt otherwise.
std::optional<std::vector<UPPoint>> enumerate_if_finite(const TailSet& e, std::size_t limit = 4096);

/// Complex-valued function on tails that is locally constant "at infinity":
/// the value on y is the output of the strongly connected component in which
/// the run of y eventually stays, and 0 when the run dies. Indicators of
/// TailSets and all finite linear combinations and products of them have this
/// form. The stored automaton is minimal, so the closure of the support is
/// the TailSet read off the same table.
class TailFunction {
 public:
  TailFunction() = default;
  static TailFunction zero(int letters);
  static TailFunction indicator(const TailSet& e, Scalar c = 1.0);
  /// outputs[s] must be constant on each cyclic strongly connected component;
  /// values on transient states are ignored.
  static TailFunction from_automaton(const Dfa& d, int root, const std::vector<Scalar>& outputs, double eps = kDropEps);

  int letters() const { return dfa_.letters; }
  bool is_zero() const { return dfa_.size() == 0; }
  const Dfa& dfa() const { return dfa_; }
  const std::vector<Scalar>& outputs() const { return out_; }

  Scalar operator()(const UPPoint& y) const;
  TailFunction derivative(WordView w) const;
  /// Closure of the support.
  TailSet support() const;
  TailFunction restrict_to(const TailSet& e) const;

  /// Largest |value| attained.
  double sup_abs() const;
  /// Values attained (one per cyclic component, possibly repeated).
  std::vector<Scalar> values() const;

  /// Applies fn to every attained value (the zero region stays zero).
  TailFunction map(const std::function<Scalar(Scalar)>& fn, double eps = kDropEps) const;

  /// Decomposition f = Σ c_i 1_{E_i} into closed sets.
  std::vector<std::pair<Scalar, TailSet>> decompose() const;

  /// Finite cyclic regions: for each cyclic component whose region of
  /// eventual runs is a finite set, that set of points and the value there.
  /// Regions that are infinite are reported with an empty point list and
  /// infinite = true.
  struct Region {
    Scalar value;
    bool infinite;
    std::vector<UPPoint> points;
  };
  std::vector<Region> regions(std::size_t limit = 4096) const;

 private:
  Dfa dfa_;
  std::vector<Scalar> out_;
};

TailFunction operator+(const TailFunction& f, const TailFunction& g);
TailFunction operator-(const TailFunction& f, const TailFunction& g);
TailFunction operator*(const TailFunction& f, const TailFunction& g);
TailFunction operator*(Scalar c, const TailFunction& f);
TailFunction conj(const TailFunction& f);
bool approx_equal(const TailFunction& f, const TailFunction& g, double tol);

}  // namespace gammalg
