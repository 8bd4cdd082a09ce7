#pragma once

#include <map>
#include <vector>

#include "gammalg/shift_kernel.hpp"
#include "gammalg/tail_set.hpp"

namespace gammalg {

/// u·E = {u·y : y ∈ E}.
struct PrefixedSet {
  Word prefix;
  TailSet tail;

  bool is_empty() const { return tail.is_empty(); }
  bool operator==(const PrefixedSet&) const = default;
};

/// Lattice of closed sofic subsets of S attached to one automaton: follower
/// sets, generalized cylinders and the preimage-count partition.
class CylinderLattice {
 public:
  explicit CylinderLattice(const FollowerAutomaton& aut);

  const FollowerAutomaton& automaton() const { return aut_; }

  const TailSet& full() const { return followers_.front(); }
  /// F(q) for an automaton state.
  const TailSet& follower_state(int q) const { return followers_.at(q); }
  /// F(w); empty when w ∉ 𝕎(S).
  TailSet follower(WordView w) const;

  /// C(u;F) for words of F all of length |u|.
  PrefixedSet gen_cylinder(WordView u, const std::vector<Word>& others) const;
  /// C'(u;F) with no length restriction.
  PrefixedSet gen_cylinder_unrestricted(WordView u, const std::vector<Word>& others) const;

  /// c_k(y) = #{w ∈ 𝕎_k(S) : w·y ∈ S}, exact, as a function of the tail y.
  struct PreimageCount {
    Dfa profile;                 // profile automaton, root 0
    std::vector<BigInt> value;   // count on each profile state
    std::vector<bool> cyclic;    // profile state lies on a cycle
  };
  PreimageCount preimage_count(std::size_t k) const;

  /// l ↦ indicator of Π_l = {y : c_k(y) = l}. The Π_l partition S.
  std::map<BigInt, TailFunction> skl_tail_partition(std::size_t k) const;
  /// c_k as a (floating) tail function.
  TailFunction preimage_count_function(std::size_t k) const;
  /// max{l : Π_l ≠ ∅}.
  BigInt max_preimages(std::size_t k) const;

 private:
  FollowerAutomaton aut_;
  std::vector<TailSet> followers_;
};

}  // namespace gammalg
