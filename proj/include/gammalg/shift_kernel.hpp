#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gammalg/dfa.hpp"
#include "gammalg/up_point.hpp"
#include "gammalg/word.hpp"

namespace gammalg {

using BigInt = boost::multiprecision::cpp_int;

struct FullShift {};

struct SftForbidden {
  std::vector<Word> words;
};

/// Adjacency matrix over the letters (sorted order): row a, column b is 1
/// when ab may occur.
struct SftMatrix {
  std::vector<std::vector<int>> rows;
};

struct SoficGraph {
  struct Edge {
    int from;
    int to;
    Letter label;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

struct SubshiftSpec {
  Alphabet alphabet;
  std::variant<FullShift, SftForbidden, SftMatrix, SoficGraph> variant;
};

/// Minimal deterministic presentation of a sofic shift S: state q stands for
/// the follower set F(w) of every word w leading to it, the root (state 0)
/// for S itself. States are numbered by breadth-first discovery.
class FollowerAutomaton {
 public:
  FollowerAutomaton(Alphabet alphabet, Dfa dfa, std::vector<std::string> warnings = {});

  const Alphabet& alphabet() const { return alphabet_; }
  const Dfa& dfa() const { return dfa_; }
  int letters() const { return dfa_.letters; }
  int num_states() const { return dfa_.size(); }
  static constexpr int root() { return 0; }

  int step(int q, Letter a) const { return dfa_.step(q, a); }
  /// State reached by w from the root, or kNoState when w ∉ 𝕎(S).
  int state_of(WordView w) const { return dfa_.run(root(), w); }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Alphabet alphabet_;
  Dfa dfa_;
  std::vector<std::string> warnings_;
};

/// Builds the follower automaton. Vertices of graph presentations that are
/// not reachable from a cycle are pruned so that σ(S) = S; a warning is
/// recorded when this changes the language.
FollowerAutomaton compile(const SubshiftSpec& spec);

/// Labeled graph equivalent to the presentation (used by compile and by the
/// brute-force checks in the tests).
SoficGraph presentation_graph(const SubshiftSpec& spec);

/// Sofic presentation whose vertices are the automaton states.
SubshiftSpec to_sofic_spec(const FollowerAutomaton& aut);

bool word_in_language(const FollowerAutomaton& aut, WordView w);

struct WordCounts {
  BigInt total;
  std::vector<BigInt> per_state;  // N_n(q)
};
WordCounts count_words(const FollowerAutomaton& aut, std::size_t n);

/// All words of 𝕎_n(S) in lexicographic order.
std::vector<Word> words_of_length(const FollowerAutomaton& aut, std::size_t n);

bool is_valid(const FollowerAutomaton& aut, const UPPoint& p);

std::set<UPPoint> periodic_points(const FollowerAutomaton& aut, std::size_t n);

bool exists_aperiodic(const FollowerAutomaton& aut);

/// True when S is a finite set (every point periodic and finitely many).
bool is_finite(const FollowerAutomaton& aut);

/// Strong connectivity of the transition graph of a matrix presentation.
bool sft_irreducible(const SubshiftSpec& spec);

}  // namespace gammalg
