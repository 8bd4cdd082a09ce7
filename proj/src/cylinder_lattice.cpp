#include "gammalg/cylinder_lattice.hpp"

#include <map>

#include "gammalg/error.hpp"

namespace gammalg {

CylinderLattice::CylinderLattice(const FollowerAutomaton& aut) : aut_(aut) {
  followers_.reserve(aut_.num_states());
  for (int q = 0; q < aut_.num_states(); ++q) followers_.push_back(TailSet::from_dfa(aut_.dfa(), q));
}

TailSet CylinderLattice::follower(WordView w) const {
  const int q = aut_.state_of(w);
  return q == kNoState ? TailSet::empty(aut_.letters()) : followers_[q];
}

PrefixedSet CylinderLattice::gen_cylinder(WordView u, const std::vector<Word>& others) const {
  for (const auto& v : others)
    if (v.size() != u.size()) throw Error(ErrorKind::BadLength, "generalized cylinder words must share the length of u");
  return gen_cylinder_unrestricted(u, others);
}

PrefixedSet CylinderLattice::gen_cylinder_unrestricted(WordView u, const std::vector<Word>& others) const {
  TailSet tail = follower(u);
  for (const auto& v : others) {
    if (tail.is_empty()) break;
    tail = intersect(tail, follower(v));
  }
  return PrefixedSet{Word(u.begin(), u.end()), std::move(tail)};
}

CylinderLattice::PreimageCount CylinderLattice::preimage_count(std::size_t k) const {
  const auto counts = count_words(aut_, k).per_state;
  const int n = aut_.num_states();
  // A profile records, for each state q with N_k(q) > 0, where the run of the
  // tail from q currently is (or that it died).
  std::vector<int> active;
  for (int q = 0; q < n; ++q)
    if (counts[q] > 0) active.push_back(q);
  PreimageCount pc{Dfa(aut_.letters(), 0), {}, {}};
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> profiles{active};
  ids[active] = pc.profile.add_state();
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (int a = 0; a < aut_.letters(); ++a) {
      std::vector<int> next(profiles[i].size(), kNoState);
      bool any = false;
      for (std::size_t j = 0; j < next.size(); ++j) {
        const int s = profiles[i][j];
        if (s == kNoState) continue;
        next[j] = aut_.step(s, static_cast<Letter>(a));
        any = any || next[j] != kNoState;
      }
      if (!any) continue;
      auto [it, inserted] = ids.try_emplace(next, 0);
      if (inserted) {
        it->second = pc.profile.add_state();
        profiles.push_back(next);
      }
      pc.profile.set(static_cast<int>(i), static_cast<Letter>(a), it->second);
    }
  pc.value.assign(profiles.size(), 0);
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = 0; j < active.size(); ++j)
      if (profiles[i][j] != kNoState) pc.value[i] += counts[active[j]];
  const auto sccs = dfa::strongly_connected(pc.profile);
  pc.cyclic.resize(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) pc.cyclic[i] = sccs.cyclic[sccs.component[i]];
  return pc;
}

std::map<BigInt, TailFunction> CylinderLattice::skl_tail_partition(std::size_t k) const {
  const auto pc = preimage_count(k);
  std::map<BigInt, TailFunction> out;
  for (std::size_t i = 0; i < pc.value.size(); ++i) {
    if (!pc.cyclic[i] || out.count(pc.value[i])) continue;
    const BigInt l = pc.value[i];
    std::vector<Scalar> ind(pc.value.size(), 0.0);
    for (std::size_t j = 0; j < ind.size(); ++j)
      if (pc.value[j] == l) ind[j] = 1.0;
    out.emplace(l, TailFunction::from_automaton(pc.profile, 0, ind));
  }
  return out;
}

TailFunction CylinderLattice::preimage_count_function(std::size_t k) const {
  const auto pc = preimage_count(k);
  std::vector<Scalar> out(pc.value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pc.value[i].convert_to<double>();
  return TailFunction::from_automaton(pc.profile, 0, out);
}

BigInt CylinderLattice::max_preimages(std::size_t k) const {
  const auto pc = preimage_count(k);
  BigInt best = 0;
  for (std::size_t i = 0; i < pc.value.size(); ++i)
    if (pc.cyclic[i] && pc.value[i] > best) best = pc.value[i];
  return best;
}

}  // namespace gammalg
