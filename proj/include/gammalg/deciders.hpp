#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammalg/cylinder_lattice.hpp"

namespace gammalg {

/// A realized generalized cylinder C(u;F) at length |u|.
struct CylinderClass {
  Word u;
  std::vector<Word> F;
  TailSet tail;
  std::size_t length = 0;
  int state = 0;            // F(u)
  std::vector<int> others;  // F(v), v ∈ F
};

struct ClassFamily {
  std::vector<CylinderClass> classes;
  std::size_t transient = 0;  // of n ↦ 𝔉_n
  std::size_t period = 1;
  bool sampled = false;       // true when the subset cap was hit
};

/// Throws ClassExplosion when some 2^{|𝔉_n|} exceeds cap.
ClassFamily realized_classes(const FollowerAutomaton& aut, std::size_t cap = 65536);
/// Same enumeration restricted to subsets of size ≤ 2; never throws.
ClassFamily sampled_classes(const FollowerAutomaton& aut);

/// Least m with ⋃_{j≤m} σ^j(E) = S.
std::optional<std::size_t> covering_index(const CylinderLattice& lattice, const TailSet& e);
/// Least j with σ^j(E) = S.
std::optional<std::size_t> onto_index(const CylinderLattice& lattice, const TailSet& e);

/// ⋃_{k<|u|} suffix_k(u)·E ∪ ⋃_{j≥0} σ^j(E), the full forward orbit of u·E.
TailSet orbit_union(const TailSet& e, WordView u);

enum class Status { Simple, NotSimple, Unknown };
enum class AlgebraKind { OS, AF };

std::string_view status_name(Status s);

struct ClassResult {
  CylinderClass cls;
  std::optional<std::size_t> m;
};

struct Witness {
  Word u;
  std::vector<Word> F;
  TailSet tail;
  TailSet orbit;  // stabilized union; differs from S
};

struct Verdict {
  AlgebraKind algebra = AlgebraKind::OS;
  Status status = Status::Unknown;
  std::vector<ClassResult> classes;
  std::optional<Witness> witness;
  std::size_t class_cap = 0;
  std::size_t witness_len_cap = 0;
  bool sampled = false;
  std::vector<std::string> notes;
};

struct DeciderConfig {
  std::size_t class_cap = 65536;
  std::size_t witness_len_cap = 0;  // 0: 2·(transient+period)·|states|
  std::size_t witness_words = 256;  // words u tried per class and length
};

/// Throws NotApplicable when S is finite or σ is injective.
Verdict decide_gamma_simple(const FollowerAutomaton& aut, const DeciderConfig& cfg = {});
Verdict decide_af_simple(const FollowerAutomaton& aut, const DeciderConfig& cfg = {});

/// Re-checks a NotSimple certificate from scratch.
bool verify_witness(const FollowerAutomaton& aut, const Witness& w, AlgebraKind kind);

}  // namespace gammalg
