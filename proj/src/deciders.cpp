#include "gammalg/deciders.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gammalg/error.hpp"

namespace gammalg {

namespace {

using StateSet = std::vector<int>;

StateSet step_all(const FollowerAutomaton& aut, const StateSet& from) {
  std::set<int> out;
  for (int q : from)
    for (int a = 0; a < aut.letters(); ++a)
      if (int r = aut.step(q, static_cast<Letter>(a)); r != kNoState) out.insert(r);
  return StateSet(out.begin(), out.end());
}

struct Orbit {
  std::vector<StateSet> sets;  // R_0 .. R_{t+p}
  std::size_t transient = 0;
  std::size_t period = 1;

  const StateSet& at(std::size_t n) const {
    if (n < sets.size()) return sets[n];
    return sets[transient + (n - transient) % period];
  }
};

Orbit reach_orbit(const FollowerAutomaton& aut) {
  Orbit o;
  std::map<StateSet, std::size_t> seen;
  StateSet cur{FollowerAutomaton::root()};
  for (std::size_t n = 0;; ++n) {
    if (auto it = seen.find(cur); it != seen.end()) {
      o.transient = it->second;
      o.period = n - it->second;
      return o;
    }
    seen.emplace(cur, n);
    o.sets.push_back(cur);
    cur = step_all(aut, cur);
  }
}

// exact[k][s]: s reaches target in exactly k steps.
std::vector<std::vector<bool>> exact_reach(const FollowerAutomaton& aut, int target, std::size_t n) {
  const int states = aut.num_states();
  std::vector<std::vector<bool>> exact(n + 1, std::vector<bool>(states, false));
  exact[0][target] = true;
  for (std::size_t k = 1; k <= n; ++k)
    for (int s = 0; s < states; ++s)
      for (int a = 0; a < aut.letters() && !exact[k][s]; ++a)
        if (int r = aut.step(s, static_cast<Letter>(a)); r != kNoState && exact[k - 1][r]) exact[k][s] = true;
  return exact;
}

// Words of length n from the root to target, lexicographic, at most limit.
std::vector<Word> words_to(const FollowerAutomaton& aut, int target, std::size_t n, std::size_t limit) {
  const auto exact = exact_reach(aut, target, n);
  std::vector<Word> out;
  if (!exact[n][FollowerAutomaton::root()]) return out;
  if (n == 0) return {Word{}};
  Word w;
  std::vector<int> path{FollowerAutomaton::root()};
  std::vector<int> next_letter{0};
  while (!next_letter.empty() && out.size() < limit) {
    const std::size_t depth = w.size();
    if (depth == n) {
      out.push_back(w);
      w.pop_back();
      path.pop_back();
      next_letter.pop_back();
      continue;
    }
    int& a = next_letter.back();
    bool advanced = false;
    for (; a < aut.letters(); ++a) {
      const int r = aut.step(path.back(), static_cast<Letter>(a));
      if (r == kNoState || !exact[n - depth - 1][r]) continue;
      w.push_back(static_cast<Letter>(a));
      path.push_back(r);
      ++a;
      next_letter.push_back(0);
      advanced = true;
      break;
    }
    if (!advanced) {
      next_letter.pop_back();
      path.pop_back();
      if (!w.empty()) w.pop_back();
    }
  }
  return out;
}

Word first_word_to(const FollowerAutomaton& aut, int target, std::size_t n) {
  auto words = words_to(aut, target, n, 1);
  if (words.empty()) throw Error(ErrorKind::Internal, "state not reachable at the requested length");
  return words.front();
}

ClassFamily enumerate_classes(const FollowerAutomaton& aut, std::size_t cap, std::size_t max_subset, bool strict) {
  const CylinderLattice lattice(aut);
  const Orbit orbit = reach_orbit(aut);
  ClassFamily fam;
  fam.transient = orbit.transient;
  fam.period = orbit.period;
  const std::size_t end = std::max<std::size_t>(orbit.transient, 1) + orbit.period;
  std::set<std::pair<TailSet, std::size_t>> seen;
  for (std::size_t n = 1; n < end; ++n) {
    const StateSet& states = orbit.at(n);
    const std::size_t size = states.size();
    const bool explodes = size >= 63 || (std::size_t{1} << size) > cap;
    if (explodes && strict) throw Error(ErrorKind::ClassExplosion, std::to_string(size) + " follower sets at length " + std::to_string(n));
    // Subsets in increasing size, then lexicographically by member list.
    std::vector<std::vector<std::size_t>> subsets;
    const std::size_t limit = explodes ? std::min<std::size_t>(max_subset, 2) : std::min(max_subset, size);
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t from, std::size_t want) {
      if (pick.size() == want) {
        subsets.push_back(pick);
        return;
      }
      for (std::size_t i = from; i < size; ++i) {
        pick.push_back(i);
        choose(i + 1, want);
        pick.pop_back();
      }
    };
    for (std::size_t want = 1; want <= limit; ++want) choose(0, want);
    if (explodes) fam.sampled = true;
    for (const auto& sub : subsets) {
      TailSet tail = lattice.follower_state(states[sub.front()]);
      for (std::size_t i = 1; i < sub.size() && !tail.is_empty(); ++i) tail = intersect(tail, lattice.follower_state(states[sub[i]]));
      if (tail.is_empty() || !seen.emplace(tail, n).second) continue;
      CylinderClass c;
      c.tail = tail;
      c.length = n;
      c.state = states[sub.front()];
      c.u = first_word_to(aut, c.state, n);
      for (std::size_t i = 1; i < sub.size(); ++i) {
        c.others.push_back(states[sub[i]]);
        c.F.push_back(first_word_to(aut, states[sub[i]], n));
      }
      fam.classes.push_back(std::move(c));
    }
  }
  return fam;
}

void check_applicable(const FollowerAutomaton& aut) {
  if (is_finite(aut)) throw Error(ErrorKind::NotApplicable, "the shift is finite");
  if (CylinderLattice(aut).max_preimages(1) <= 1) throw Error(ErrorKind::NotApplicable, "the shift map is injective");
}

ClassFamily classes_for(const FollowerAutomaton& aut, const DeciderConfig& cfg, Verdict& v) {
  try {
    return realized_classes(aut, cfg.class_cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ClassExplosion) throw;
    v.notes.push_back(std::string("class cap exceeded, sampled subfamily used: ") + e.what());
    return sampled_classes(aut);
  }
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Simple: return "simple";
    case Status::NotSimple: return "not_simple";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

ClassFamily realized_classes(const FollowerAutomaton& aut, std::size_t cap) { return enumerate_classes(aut, cap, SIZE_MAX, true); }

ClassFamily sampled_classes(const FollowerAutomaton& aut) { return enumerate_classes(aut, 0, 2, false); }

std::optional<std::size_t> covering_index(const CylinderLattice& lattice, const TailSet& e) {
  std::set<TailSet> seen;
  TailSet cur = e;
  TailSet acc = TailSet::empty(e.letters());
  for (std::size_t j = 0;; ++j) {
    if (!seen.insert(cur).second) return std::nullopt;
    acc = unite(acc, cur);
    if (acc == lattice.full()) return j;
    cur = shift_image(cur);
  }
}

std::optional<std::size_t> onto_index(const CylinderLattice& lattice, const TailSet& e) {
  std::set<TailSet> seen;
  TailSet cur = e;
  for (std::size_t j = 0;; ++j) {
    if (cur == lattice.full()) return j;
    if (!seen.insert(cur).second) return std::nullopt;
    cur = shift_image(cur);
  }
}

TailSet orbit_union(const TailSet& e, WordView u) {
  TailSet acc = TailSet::empty(e.letters());
  for (std::size_t k = 0; k < u.size(); ++k) acc = unite(acc, prepend(u.subspan(k), e));
  std::set<TailSet> seen;
  for (TailSet cur = e; seen.insert(cur).second; cur = shift_image(cur)) acc = unite(acc, cur);
  return acc;
}

Verdict decide_gamma_simple(const FollowerAutomaton& aut, const DeciderConfig& cfg) {
  check_applicable(aut);
  const CylinderLattice lattice(aut);
  Verdict v;
  v.algebra = AlgebraKind::OS;
  v.class_cap = cfg.class_cap;
  const ClassFamily fam = classes_for(aut, cfg, v);
  v.sampled = fam.sampled;
  v.witness_len_cap = cfg.witness_len_cap ? cfg.witness_len_cap
                                          : 2 * (fam.transient + fam.period) * static_cast<std::size_t>(aut.num_states());
  std::vector<const CylinderClass*> failing;
  for (const auto& c : fam.classes) {
    v.classes.push_back(ClassResult{c, covering_index(lattice, c.tail)});
    if (!v.classes.back().m) failing.push_back(&c);
  }
  if (failing.empty()) {
    v.status = fam.sampled ? Status::Unknown : Status::Simple;
    return v;
  }
  const Orbit orbit = reach_orbit(aut);
  for (const CylinderClass* c : failing) {
    for (std::size_t n = c->length; n <= std::max(v.witness_len_cap, c->length); ++n) {
      const StateSet& states = orbit.at(n);
      auto present = [&](int q) { return std::binary_search(states.begin(), states.end(), q); };
      if (!present(c->state) || !std::all_of(c->others.begin(), c->others.end(), present)) continue;
      for (const auto& u : words_to(aut, c->state, n, cfg.witness_words)) {
        TailSet un = orbit_union(c->tail, u);
        if (un == lattice.full()) continue;
        Witness w{u, {}, c->tail, std::move(un)};
        for (int q : c->others) w.F.push_back(first_word_to(aut, q, n));
        v.witness = std::move(w);
        v.status = Status::NotSimple;
        return v;
      }
    }
  }
  v.status = Status::Unknown;
  v.notes.push_back("UNKNOWN: " + std::to_string(failing.size()) +
                    " class(es) fail the tail covering test but every witness up to length " +
                    std::to_string(v.witness_len_cap) + " covers S");
  return v;
}

Verdict decide_af_simple(const FollowerAutomaton& aut, const DeciderConfig& cfg) {
  check_applicable(aut);
  const CylinderLattice lattice(aut);
  Verdict v;
  v.algebra = AlgebraKind::AF;
  v.class_cap = cfg.class_cap;
  const ClassFamily fam = classes_for(aut, cfg, v);
  v.sampled = fam.sampled;
  v.witness_len_cap = 0;
  for (const auto& c : fam.classes) {
    v.classes.push_back(ClassResult{c, onto_index(lattice, c.tail)});
    if (!v.classes.back().m && !v.witness) v.witness = Witness{c.u, c.F, c.tail, orbit_union(c.tail, c.u)};
  }
  if (v.witness)
    v.status = Status::NotSimple;
  else
    v.status = fam.sampled ? Status::Unknown : Status::Simple;
  return v;
}

bool verify_witness(const FollowerAutomaton& aut, const Witness& w, AlgebraKind kind) {
  const CylinderLattice lattice(aut);
  const PrefixedSet cyl = lattice.gen_cylinder(w.u, w.F);
  if (cyl.is_empty() || cyl.tail != w.tail) return false;
  if (kind == AlgebraKind::AF) return !onto_index(lattice, cyl.tail).has_value();
  const TailSet un = orbit_union(cyl.tail, w.u);
  return un == w.orbit && un != lattice.full();
}

}  // namespace gammalg
