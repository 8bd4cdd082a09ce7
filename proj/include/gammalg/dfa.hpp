#pragma once

#include <cstdint>
#include <vector>

#include "gammalg/word.hpp"

namespace gammalg {

inline constexpr int kNoState = -1;

/// Deterministic automaton with a partial transition table. Every state is
/// accepting: the automaton describes a prefix-closed language, and the
/// infinite runs from the root describe a closed set of sequences.
struct Dfa {
  int letters = 0;
  std::vector<int> next;  // next[s * letters + a], kNoState when undefined

  Dfa() = default;
  Dfa(int letter_count, int states) : letters(letter_count), next(static_cast<std::size_t>(states) * letter_count, kNoState) {}

  int size() const { return letters == 0 ? 0 : static_cast<int>(next.size()) / letters; }
  int step(int s, Letter a) const { return next[static_cast<std::size_t>(s) * letters + a]; }
  void set(int s, Letter a, int t) { next[static_cast<std::size_t>(s) * letters + a] = t; }
  int add_state() {
    next.resize(next.size() + letters, kNoState);
    return size() - 1;
  }
  int run(int s, WordView w) const {
    for (Letter a : w) {
      if (s == kNoState) return kNoState;
      s = step(s, a);
    }
    return s;
  }

  auto operator<=>(const Dfa&) const = default;
  bool operator==(const Dfa&) const = default;
};

namespace dfa {

/// States from which an infinite run exists.
std::vector<bool> live_states(const Dfa& d);

/// Renumbers the states reachable from root in breadth-first order (letters
/// ascending), dropping states outside keep. root must be kept.
/// old_to_new, when given, receives the renumbering (kNoState for dropped).
Dfa bfs_relabel(const Dfa& d, int root, const std::vector<bool>& keep, std::vector<int>* old_to_new = nullptr);

/// Coarsest partition refining `initial` that is compatible with the
/// transition structure (Moore refinement). Undefined transitions form their
/// own class. Returns a block id per state.
std::vector<int> refine(const Dfa& d, std::vector<int> initial);

/// Quotient of d by a transition-compatible partition.
Dfa quotient(const Dfa& d, const std::vector<int>& block, int* block_count = nullptr);

struct Sccs {
  std::vector<int> component;    // per state
  std::vector<bool> cyclic;      // per component: contains a cycle
  std::vector<bool> simple;      // per component: cyclic and every state has exactly one internal edge
  int count = 0;                 // components are numbered in reverse topological order (sinks first)
};
Sccs strongly_connected(const Dfa& d);

/// reach[s] is true when some state in `targets` is reachable from s (s itself counts).
std::vector<bool> can_reach(const Dfa& d, const std::vector<bool>& targets);

/// Runs transient·period^∞ from root. Returns a state visited at the start of
/// a period on the eventual cycle of the run, or kNoState when the run dies.
int run_point(const Dfa& d, int root, WordView transient, WordView period);

/// Canonical minimal form of the prefix language read from root,
/// restricted to live states. Returns an empty Dfa (size 0) when the root is
/// not live.
Dfa canonical(const Dfa& d, int root);

}  // namespace dfa
}  // namespace gammalg
