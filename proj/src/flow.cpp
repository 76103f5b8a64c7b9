#include "tpack/flow.hpp"

#include <algorithm>
#include <queue>

#include "tpack/errors.hpp"

namespace tpack::flow {

int Network::add_vertex() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

void Network::add_undirected(int u, int v, int cap, int label) {
  int idx = static_cast<int>(arcs_.size());
  arcs_.push_back({v, cap, label});
  arcs_.push_back({u, cap, label});
  adj_[u].push_back(idx);
  adj_[v].push_back(idx + 1);
  base_cap_.push_back(cap);
}

void Network::add_directed(int u, int v, int cap, int label) {
  int idx = static_cast<int>(arcs_.size());
  arcs_.push_back({v, cap, label});
  arcs_.push_back({u, 0, label});
  adj_[u].push_back(idx);
  adj_[v].push_back(idx + 1);
  base_cap_.push_back(cap);
}

bool Network::bfs_augment(int s, int t) {
  std::vector<int> parent_arc(adj_.size(), -1);
  std::vector<char> seen(adj_.size(), 0);
  std::queue<int> q;
  q.push(s);
  seen[s] = 1;
  while (!q.empty() && !seen[t]) {
    int v = q.front();
    q.pop();
    for (int a : adj_[v]) {
      if (arcs_[a].cap <= 0) continue;
      int w = arcs_[a].to;
      if (seen[w]) continue;
      seen[w] = 1;
      parent_arc[w] = a;
      q.push(w);
    }
  }
  if (!seen[t]) return false;
  // bottleneck, then push
  int bottleneck = kInf;
  for (int v = t; v != s;) {
    int a = parent_arc[v];
    bottleneck = std::min(bottleneck, arcs_[a].cap);
    v = arcs_[a ^ 1].to;
  }
  for (int v = t; v != s;) {
    int a = parent_arc[v];
    arcs_[a].cap -= bottleneck;
    arcs_[a ^ 1].cap += bottleneck;
    v = arcs_[a ^ 1].to;
  }
  return true;
}

int Network::max_flow(int s, int t) {
  if (solved_) throw Error(ErrorKind::Internal, "flow network solved twice");
  solved_ = true;
  while (bfs_augment(s, t)) {
  }
  // Flow value = total net flow out of s.
  int value = 0;
  for (int a : adj_[s]) {
    value += (a & 1) ? -pair_flow(a / 2) : pair_flow(a / 2);
  }
  return value;
}

std::vector<char> Network::source_side(int s) const {
  std::vector<char> seen(adj_.size(), 0);
  std::queue<int> q;
  q.push(s);
  seen[s] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int a : adj_[v]) {
      if (arcs_[a].cap <= 0) continue;
      int w = arcs_[a].to;
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  return seen;
}

int Network::pair_flow(int pair) const {
  // positive: net flow in the forward direction
  return base_cap_[pair] - arcs_[2 * pair].cap;
}

std::vector<Network::TracedPath> Network::decompose(int s, int t) {
  // Remaining net flow per pair, signed in the forward direction.
  std::vector<int> remaining(pair_count());
  for (int p = 0; p < pair_count(); ++p) remaining[p] = pair_flow(p);

  std::vector<TracedPath> out;
  while (true) {
    // trace one unit from s, loop-erasing on revisit
    std::vector<int> vstack{s};
    std::vector<int> pstack;
    std::vector<int> pos(adj_.size(), -1);
    pos[s] = 0;
    bool reached = false;
    while (!vstack.empty()) {
      int v = vstack.back();
      if (v == t) {
        reached = true;
        break;
      }
      int chosen = -1;
      for (int a : adj_[v]) {
        int p = a / 2;
        int need = (a & 1) ? -1 : 1;  // walking forward uses +1, backward -1
        if (remaining[p] * need > 0) {
          chosen = a;
          break;
        }
      }
      if (chosen < 0) {
        if (v == s) break;  // no more flow to trace
        throw Error(ErrorKind::Internal, "flow decomposition stalled");
      }
      int p = chosen / 2;
      remaining[p] += (chosen & 1) ? 1 : -1;
      int w = arcs_[chosen].to;
      if (pos[w] >= 0) {
        // erase the loop w..v
        for (std::size_t i = pos[w] + 1; i < vstack.size(); ++i) pos[vstack[i]] = -1;
        vstack.resize(pos[w] + 1);
        pstack.resize(pos[w]);
      } else {
        pos[w] = static_cast<int>(vstack.size());
        vstack.push_back(w);
        pstack.push_back(p);
      }
    }
    if (!reached) break;
    out.push_back({vstack, pstack});
  }
  return out;
}

}  // namespace tpack::flow
