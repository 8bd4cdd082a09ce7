#include "gammalg/shift_kernel.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gammalg/error.hpp"

namespace gammalg {

FollowerAutomaton::FollowerAutomaton(Alphabet alphabet, Dfa dfa, std::vector<std::string> warnings)
    : alphabet_(std::move(alphabet)), dfa_(std::move(dfa)), warnings_(std::move(warnings)) {
  if (dfa_.size() == 0) throw Error(ErrorKind::EmptyShift, "the presented shift is empty");
  if (static_cast<std::size_t>(dfa_.letters) != alphabet_.size())
    throw Error(ErrorKind::AlphabetMismatch, "automaton and alphabet sizes differ");
}

namespace {

bool has_forbidden_factor(const Word& w, const std::vector<Word>& forbidden) {
  for (const auto& f : forbidden)
    if (f.size() <= w.size() && std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return true;
  return false;
}

void validate(const SubshiftSpec& spec) {
  const auto n = spec.alphabet.size();
  if (n == 0) throw Error(ErrorKind::InvalidSpec, "alphabet is empty");
  if (const auto* f = std::get_if<SftForbidden>(&spec.variant)) {
    for (const auto& w : f->words) {
      if (w.empty()) throw Error(ErrorKind::InvalidSpec, "forbidden words must be nonempty");
      for (Letter a : w)
        if (a >= n) throw Error(ErrorKind::InvalidSpec, "forbidden word uses a letter outside the alphabet");
    }
  } else if (const auto* m = std::get_if<SftMatrix>(&spec.variant)) {
    if (m->rows.size() != n) throw Error(ErrorKind::InvalidSpec, "matrix must have one row per symbol");
    for (const auto& row : m->rows) {
      if (row.size() != n) throw Error(ErrorKind::InvalidSpec, "matrix must be square");
      for (int x : row)
        if (x != 0 && x != 1) throw Error(ErrorKind::InvalidSpec, "matrix entries must be 0 or 1");
    }
  } else if (const auto* g = std::get_if<SoficGraph>(&spec.variant)) {
    if (g->vertices.empty()) throw Error(ErrorKind::InvalidSpec, "graph has no vertices");
    const int nv = static_cast<int>(g->vertices.size());
    for (const auto& e : g->edges) {
      if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv) throw Error(ErrorKind::InvalidSpec, "edge references unknown vertex");
      if (e.label >= n) throw Error(ErrorKind::InvalidSpec, "edge label outside the alphabet");
    }
  }
}

struct Nfa {
  int letters;
  std::vector<std::vector<std::pair<Letter, int>>> out;
};

Nfa to_nfa(const SoficGraph& g, int letters, const std::vector<bool>& keep) {
  Nfa nfa{letters, std::vector<std::vector<std::pair<Letter, int>>>(g.vertices.size())};
  for (const auto& e : g.edges)
    if (keep[e.from] && keep[e.to]) nfa.out[e.from].emplace_back(e.label, e.to);
  return nfa;
}

// Infinite label sequences of paths starting anywhere in `start`.
Dfa determinize(const Nfa& nfa, std::vector<int> start) {
  Dfa d(nfa.letters, 0);
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  if (start.empty()) return d;
  std::sort(start.begin(), start.end());
  ids[start] = d.add_state();
  sets.push_back(start);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int a = 0; a < nfa.letters; ++a) {
      std::vector<int> target;
      for (int v : sets[i])
        for (const auto& [label, to] : nfa.out[v])
          if (label == a) target.push_back(to);
      if (target.empty()) continue;
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      auto [it, inserted] = ids.try_emplace(target, 0);
      if (inserted) {
        it->second = d.add_state();
        sets.push_back(target);
      }
      d.set(static_cast<int>(i), static_cast<Letter>(a), it->second);
    }
  }
  return d;
}

// Vertex graph as a Dfa-like adjacency for SCC/reachability helpers.
std::vector<std::vector<int>> adjacency(const SoficGraph& g) {
  std::vector<std::vector<int>> adj(g.vertices.size());
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);
  return adj;
}

std::vector<bool> reach_closure(const std::vector<std::vector<int>>& adj, std::vector<bool> seed) {
  std::vector<int> stack;
  for (std::size_t v = 0; v < seed.size(); ++v)
    if (seed[v]) stack.push_back(static_cast<int>(v));
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seed[w]) {
        seed[w] = true;
        stack.push_back(w);
      }
  }
  return seed;
}

std::vector<std::vector<int>> reversed(const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> rev(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (int w : adj[v]) rev[w].push_back(static_cast<int>(v));
  return rev;
}

// Vertices lying on a cycle.
std::vector<bool> cyclic_vertices(const std::vector<std::vector<int>>& adj) {
  const auto n = adj.size();
  const auto rev = reversed(adj);
  std::vector<bool> on_cycle(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    // v is on a cycle iff v is reachable from one of its successors.
    std::vector<bool> seed(n, false);
    for (int w : adj[v]) seed[w] = true;
    on_cycle[v] = reach_closure(adj, seed)[v];
  }
  return on_cycle;
}

bool strongly_connected_graph(const std::vector<std::vector<int>>& adj) {
  if (adj.empty()) return false;
  std::vector<bool> seed(adj.size(), false);
  seed[0] = true;
  const auto fwd = reach_closure(adj, seed);
  const auto bwd = reach_closure(reversed(adj), seed);
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (!fwd[v] || !bwd[v]) return false;
  // A single vertex needs a loop to carry an infinite path.
  return adj.size() > 1 || !adj[0].empty();
}

}  // namespace

SoficGraph presentation_graph(const SubshiftSpec& spec) {
  validate(spec);
  const int n = static_cast<int>(spec.alphabet.size());
  SoficGraph g;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullShift>) {
          g.vertices = {"*"};
          for (int a = 0; a < n; ++a) g.edges.push_back({0, 0, static_cast<Letter>(a)});
        } else if constexpr (std::is_same_v<T, SftForbidden>) {
          std::size_t window = 2;
          for (const auto& w : v.words) window = std::max(window, w.size());
          // Vertices: allowed blocks of length window-1; edges read the block's first letter.
          std::map<Word, int> index;
          for (auto& b : all_words(n, window - 1)) {
            if (has_forbidden_factor(b, v.words)) continue;
            index.emplace(b, static_cast<int>(g.vertices.size()));
            g.vertices.push_back(spec.alphabet.format_word(b));
          }
          for (const auto& [b, i] : index)
            for (int c = 0; c < n; ++c) {
              Word longer = b;
              longer.push_back(static_cast<Letter>(c));
              if (has_forbidden_factor(longer, v.words)) continue;
              Word nb(longer.begin() + 1, longer.end());
              auto it = index.find(nb);
              if (it != index.end()) g.edges.push_back({i, it->second, b.front()});
            }
        } else if constexpr (std::is_same_v<T, SftMatrix>) {
          for (int a = 0; a < n; ++a) g.vertices.push_back(spec.alphabet.symbol(static_cast<Letter>(a)));
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              if (v.rows[a][b] == 1) g.edges.push_back({a, b, static_cast<Letter>(a)});
        } else {
          g = v;
        }
      },
      spec.variant);
  return g;
}

FollowerAutomaton compile(const SubshiftSpec& spec) {
  const SoficGraph g = presentation_graph(spec);
  const int letters = static_cast<int>(spec.alphabet.size());
  const auto adj = adjacency(g);
  const auto on_cycle = cyclic_vertices(adj);
  // Forward: can reach a cycle (carries an infinite path). Backward: reachable from a cycle.
  const auto forward = reach_closure(reversed(adj), on_cycle);
  const auto backward = reach_closure(adj, on_cycle);

  auto build = [&](const std::vector<bool>& keep) {
    std::vector<int> start;
    for (std::size_t v = 0; v < keep.size(); ++v)
      if (keep[v]) start.push_back(static_cast<int>(v));
    const Dfa d = determinize(to_nfa(g, letters, keep), start);
    return dfa::canonical(d, d.size() == 0 ? kNoState : 0);
  };

  std::vector<bool> keep(g.vertices.size());
  for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = forward[v] && backward[v];
  Dfa pruned = build(keep);
  std::vector<std::string> warnings;
  if (build(forward) != pruned)
    warnings.push_back("presentation was pruned to its shift-invariant part; the language changed");
  if (pruned.size() == 0) throw Error(ErrorKind::EmptyShift, "the presented shift is empty");
  return FollowerAutomaton(spec.alphabet, std::move(pruned), std::move(warnings));
}

SubshiftSpec to_sofic_spec(const FollowerAutomaton& aut) {
  SoficGraph g;
  for (int q = 0; q < aut.num_states(); ++q) g.vertices.push_back("q" + std::to_string(q));
  for (int q = 0; q < aut.num_states(); ++q)
    for (int a = 0; a < aut.letters(); ++a) {
      const int t = aut.step(q, static_cast<Letter>(a));
      if (t != kNoState) g.edges.push_back({q, t, static_cast<Letter>(a)});
    }
  return SubshiftSpec{aut.alphabet(), std::move(g)};
}

bool word_in_language(const FollowerAutomaton& aut, WordView w) { return aut.state_of(w) != kNoState; }

WordCounts count_words(const FollowerAutomaton& aut, std::size_t n) {
  std::vector<BigInt> cur(aut.num_states(), 0);
  cur[FollowerAutomaton::root()] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> next(aut.num_states(), 0);
    for (int q = 0; q < aut.num_states(); ++q) {
      if (cur[q] == 0) continue;
      for (int a = 0; a < aut.letters(); ++a) {
        const int t = aut.step(q, static_cast<Letter>(a));
        if (t != kNoState) next[t] += cur[q];
      }
    }
    cur = std::move(next);
  }
  WordCounts wc{0, std::move(cur)};
  for (const auto& c : wc.per_state) wc.total += c;
  return wc;
}

std::vector<Word> words_of_length(const FollowerAutomaton& aut, std::size_t n) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self, int q) -> void {
    if (w.size() == n) {
      out.push_back(w);
      return;
    }
    for (int a = 0; a < aut.letters(); ++a) {
      const int t = aut.step(q, static_cast<Letter>(a));
      if (t == kNoState) continue;
      w.push_back(static_cast<Letter>(a));
      self(self, t);
      w.pop_back();
    }
  };
  rec(rec, FollowerAutomaton::root());
  return out;
}

bool is_valid(const FollowerAutomaton& aut, const UPPoint& p) {
  return dfa::run_point(aut.dfa(), FollowerAutomaton::root(), p.transient(), p.period()) != kNoState;
}

std::set<UPPoint> periodic_points(const FollowerAutomaton& aut, std::size_t n) {
  std::set<UPPoint> out;
  for (auto& w : words_of_length(aut, n)) {
    UPPoint p = UPPoint::periodic(std::move(w));
    if (is_valid(aut, p)) out.insert(std::move(p));
  }
  return out;
}

bool exists_aperiodic(const FollowerAutomaton& aut) {
  const auto sccs = dfa::strongly_connected(aut.dfa());
  for (int c = 0; c < sccs.count; ++c)
    if (sccs.cyclic[c] && !sccs.simple[c]) return true;
  return false;
}

bool is_finite(const FollowerAutomaton& aut) {
  if (exists_aperiodic(aut)) return false;
  const Dfa& d = aut.dfa();
  const auto sccs = dfa::strongly_connected(d);
  // A cycle that can reach a different cycle yields infinitely many points.
  for (int c = 0; c < sccs.count; ++c) {
    if (!sccs.cyclic[c]) continue;
    std::vector<bool> others(d.size(), false);
    for (int s = 0; s < d.size(); ++s) others[s] = sccs.cyclic[sccs.component[s]] && sccs.component[s] != c;
    const auto reach = dfa::can_reach(d, others);
    for (int s = 0; s < d.size(); ++s)
      if (sccs.component[s] == c && reach[s]) return false;
  }
  return true;
}

bool sft_irreducible(const SubshiftSpec& spec) {
  const auto* m = std::get_if<SftMatrix>(&spec.variant);
  if (!m) throw Error(ErrorKind::WrongPresentation, "irreducibility is only decided for matrix presentations");
  validate(spec);
  std::vector<std::vector<int>> adj(m->rows.size());
  for (std::size_t a = 0; a < m->rows.size(); ++a)
    for (std::size_t b = 0; b < m->rows.size(); ++b)
      if (m->rows[a][b] == 1) adj[a].push_back(static_cast<int>(b));
  return strongly_connected_graph(adj);
}

}  // namespace gammalg
