#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gammalg/cylinder_lattice.hpp"
#include "gammalg/tail_set.hpp"

namespace gammalg {

/// Index of a normal-form piece {(u·y, |u|-|v|, v·y)} of the groupoid.
struct TermKey {
  Word u;
  Word v;

  int degree() const { return static_cast<int>(u.size()) - static_cast<int>(v.size()); }
  auto operator<=>(const TermKey&) const = default;
  bool operator==(const TermKey&) const = default;
};

/// A single arrow (x, k, y): range x, source y, degree k.
struct Arrow {
  UPPoint x;
  int k = 0;
  UPPoint y;

  Arrow inverse() const { return Arrow{y, -k, x}; }
  auto operator<=>(const Arrow&) const = default;
  bool operator==(const Arrow&) const = default;
};

/// c·1_{T(u,v,E)}, the exported form of an element.
struct Term {
  Scalar coef;
  Word u;
  Word v;
  TailSet tail;
};

/// Element of the dense *-algebra: a finite sum of functions supported on
/// the pieces T(u,v,·), each weighted by a tail function, plus finitely many
/// single-arrow point masses.
///
/// Canonical form: in each degree every key has the same |u| (the largest
/// one occurring), zero pieces and negligible point masses are dropped.
/// Distinct keys of one degree then have disjoint supports.
class Element {
 public:
  using TermMap = std::map<TermKey, TailFunction>;
  using PointMap = std::map<Arrow, Scalar>;

  Element() = default;
  explicit Element(int letters) : letters_(letters) {}
  /// Canonicalizes.
  Element(int letters, TermMap terms, PointMap points = {});

  int letters() const { return letters_; }
  const TermMap& terms() const { return terms_; }
  const PointMap& points() const { return points_; }
  bool is_zero() const { return terms_.empty() && points_.empty(); }
  std::set<int> degrees() const;

  /// Terms c·1_{T(u,v,E)} with closed E summing to this element (point
  /// masses excluded).
  std::vector<Term> term_list() const;

 private:
  int letters_ = 0;
  TermMap terms_;
  PointMap points_;
};

Element canonicalize(const Element& e);

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(Scalar c, const Element& a);
/// Convolution product.
Element operator*(const Element& a, const Element& b);
inline Element multiply(const Element& a, const Element& b) { return a * b; }

Element adjoint(const Element& a);
/// P: restriction to the unit space.
Element diag_expectation(const Element& a);
/// Q: restriction to the isotropy.
Element isotropy_expectation(const Element& a);
Element gauge_act(Scalar z, const Element& a);
Element degree_component(int d, const Element& a);

/// sup over arrows of |a(γ)|.
double sup_norm(const Element& a);
bool approx_equal(const Element& a, const Element& b, double tol);

/// Value at an arrow without checking that it belongs to the groupoid.
Scalar evaluate_unchecked(const Element& a, const Arrow& g);

/// Generators and distinguished elements for one subshift.
class Algebra {
 public:
  explicit Algebra(const FollowerAutomaton& aut);

  const FollowerAutomaton& automaton() const { return lattice_.automaton(); }
  const CylinderLattice& lattice() const { return lattice_; }
  int letters() const { return automaton().letters(); }

  Element zero() const { return Element(letters()); }
  Element one() const;
  /// t_u; zero when u ∉ 𝕎(S).
  Element t(WordView u) const;
  /// c·1_{T(u,v,E)} with E cut down to F(u) ∩ F(v).
  Element term(WordView u, WordView v, const TailSet& e, Scalar c = 1.0) const;
  Element term(WordView u, WordView v, const TailFunction& f) const;
  /// 1_{A(u,v)} = t_u t_v^*.
  Element a_uv(WordView u, WordView v) const;
  /// Indicator of u·E on the unit space.
  Element diagonal(const PrefixedSet& s, Scalar c = 1.0) const;
  /// c·1_{γ}; throws NotAnArrow.
  Element point(const Arrow& g, Scalar c = 1.0) const;

  bool is_arrow(const Arrow& g) const;
  Scalar evaluate(const Element& a, const Arrow& g) const;

  /// m(x) = #σ^{-1}(σ(x)) on the unit space.
  const Element& m() const { return m_; }
  /// m^{-1/2}.
  const Element& m_inv_sqrt() const { return m_inv_sqrt_; }
  /// Central projection onto {m = j}.
  Element p(int j) const;
  /// v = m^{-1/2} 1_{Γ(1,0)}.
  const Element& v() const { return v_; }

  /// φ̂ on degree-zero elements without point masses; throws NotCoreElement.
  Element phi_hat(const Element& a) const;

  /// P(1_{A(u,v_1)} ⋯ 1_{A(v_N,u)}), checked against the directly built
  /// indicator of C'(u;F); throws Internal on disagreement.
  Element cylinder_projection(WordView u, const std::vector<Word>& others) const;

 private:
  Element tail_diagonal(const TailFunction& f) const;

  CylinderLattice lattice_;
  TailFunction count1_;
  Element m_;
  Element m_inv_sqrt_;
  Element v_;
};

}  // namespace gammalg
