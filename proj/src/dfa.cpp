#include "gammalg/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gammalg::dfa {

std::vector<bool> live_states(const Dfa& d) {
  const int n = d.size();
  // Reverse edges and out-degree counts; peel states whose successors are all dead.
  std::vector<std::vector<int>> preds(n);
  std::vector<int> outdeg(n, 0);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t == kNoState) continue;
      ++outdeg[s];
      preds[t].push_back(s);
    }
  std::vector<bool> live(n, true);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s)
    if (outdeg[s] == 0) {
      live[s] = false;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int s : preds[t])
      if (live[s] && --outdeg[s] == 0) {
        live[s] = false;
        stack.push_back(s);
      }
  }
  return live;
}

Dfa bfs_relabel(const Dfa& d, int root, const std::vector<bool>& keep, std::vector<int>* old_to_new) {
  std::vector<int> map(d.size(), kNoState);
  std::vector<int> order;
  std::deque<int> queue{root};
  map[root] = 0;
  order.push_back(root);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t == kNoState || !keep[t] || map[t] != kNoState) continue;
      map[t] = static_cast<int>(order.size());
      order.push_back(t);
      queue.push_back(t);
    }
  }
  Dfa out(d.letters, static_cast<int>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(order[i], static_cast<Letter>(a));
      if (t != kNoState && keep[t]) out.set(static_cast<int>(i), static_cast<Letter>(a), map[t]);
    }
  if (old_to_new) *old_to_new = std::move(map);
  return out;
}

std::vector<int> refine(const Dfa& d, std::vector<int> block) {
  const int n = d.size();
  int count = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    std::vector<int> sig(d.letters + 1);
    for (int s = 0; s < n; ++s) {
      sig[0] = block[s];
      for (int a = 0; a < d.letters; ++a) {
        const int t = d.step(s, static_cast<Letter>(a));
        sig[a + 1] = t == kNoState ? -1 : block[t];
      }
      next[s] = ids.try_emplace(sig, static_cast<int>(ids.size())).first->second;
    }
    const int new_count = static_cast<int>(ids.size());
    block = std::move(next);
    if (new_count == count) return block;
    count = new_count;
  }
}

Dfa quotient(const Dfa& d, const std::vector<int>& block, int* block_count) {
  const int m = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  Dfa out(d.letters, m);
  for (int s = 0; s < d.size(); ++s)
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t != kNoState) out.set(block[s], static_cast<Letter>(a), block[t]);
    }
  if (block_count) *block_count = m;
  return out;
}

Sccs strongly_connected(const Dfa& d) {
  // Iterative Tarjan.
  const int n = d.size();
  Sccs r;
  r.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0;
  struct Frame {
    int s;
    int a;
  };
  for (int start = 0; start < n; ++start) {
    if (index[start] != -1) continue;
    std::vector<Frame> call{{start, 0}};
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.a < d.letters) {
        const int t = d.step(f.s, static_cast<Letter>(f.a++));
        if (t == kNoState) continue;
        if (index[t] == -1) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
        continue;
      }
      const int s = f.s;
      call.pop_back();
      if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
      if (low[s] == index[s]) {
        int t;
        do {
          t = stack.back();
          stack.pop_back();
          on_stack[t] = false;
          r.component[t] = r.count;
        } while (t != s);
        ++r.count;
      }
    }
  }
  r.cyclic.assign(r.count, false);
  r.simple.assign(r.count, true);
  std::vector<int> internal(n, 0);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t != kNoState && r.component[t] == r.component[s]) {
        r.cyclic[r.component[s]] = true;
        ++internal[s];
      }
    }
  for (int s = 0; s < n; ++s)
    if (internal[s] > 1) r.simple[r.component[s]] = false;
  for (int c = 0; c < r.count; ++c)
    if (!r.cyclic[c]) r.simple[c] = false;
  return r;
}

std::vector<bool> can_reach(const Dfa& d, const std::vector<bool>& targets) {
  const int n = d.size();
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < d.letters; ++a) {
      const int t = d.step(s, static_cast<Letter>(a));
      if (t != kNoState) preds[t].push_back(s);
    }
  std::vector<bool> reach(targets);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s)
    if (reach[s]) stack.push_back(s);
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int s : preds[t])
      if (!reach[s]) {
        reach[s] = true;
        stack.push_back(s);
      }
  }
  return reach;
}

Dfa canonical(const Dfa& d, int root) {
  if (root == kNoState || d.size() == 0) return Dfa(d.letters, 0);
  const auto live = live_states(d);
  if (!live[root]) return Dfa(d.letters, 0);
  Dfa trimmed = bfs_relabel(d, root, live);
  const auto block = refine(trimmed, std::vector<int>(trimmed.size(), 0));
  Dfa q = quotient(trimmed, block);
  return bfs_relabel(q, block[0], std::vector<bool>(q.size(), true));
}

}  // namespace gammalg::dfa

namespace gammalg::dfa {

int run_point(const Dfa& d, int root, WordView transient, WordView period) {
  if (d.size() == 0 || root == kNoState) return kNoState;
  int s = d.run(root, transient);
  std::vector<bool> seen(d.size(), false);
  while (s != kNoState && !seen[s]) {
    seen[s] = true;
    s = d.run(s, period);
  }
  return s;
}

}  // namespace gammalg::dfa
