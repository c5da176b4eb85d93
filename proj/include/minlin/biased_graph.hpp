// Copyright 2026 The minlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Graphs labelled by the unit group of Z_q. A cycle is balanced when the
// product of its labels, read in traversal order, is 1.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "minlin/error.hpp"
#include "minlin/ring.hpp"

namespace minlin {

/// Dynamic bitset over vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

  int universe() const { return n_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }
  static VertexSet full(int n) {
    VertexSet s(n);
    for (int i = 0; i < n; ++i) s.set(i);
    return s;
  }
  static VertexSet of(int n, const std::vector<int>& ids) {
    VertexSet s(n);
    for (int i : ids) s.set(i);
    return s;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.words_ < b.words_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Sorted list of edge ids.
using EdgeSet = std::vector<int>;

struct LabelledEdge {
  int u = 0;
  int v = 0;
  Int label = 1;  // for traversal u -> v
};

/// One traversal step of a walk: edge `edge` entered at vertex `from`.
struct Step {
  int edge = 0;
  int from = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

class GroupLabelledGraph {
 public:
  GroupLabelledGraph() = default;
  GroupLabelledGraph(int n, Int q) : q_(q), adj_(n) {}

  Int modulus() const { return q_; }
  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const LabelledEdge& edge(int e) const { return edges_[e]; }
  const std::vector<int>& incident(int v) const { return adj_[v]; }

  int add_vertex() {
    adj_.emplace_back();
    return num_vertices() - 1;
  }

  int add_edge(int u, int v, Int label) {
    label = mod_reduce(label, q_);
    if (std::gcd(label, q_) != 1) {
      throw Error(ErrorKind::kInternal, "edge label " + std::to_string(label) + " is not a unit");
    }
    const int id = num_edges();
    edges_.push_back({u, v, label});
    adj_[u].push_back(id);
    if (v != u) adj_[v].push_back(id);
    return id;
  }

  int other(int e, int x) const { return edges_[e].u == x ? edges_[e].v : edges_[e].u; }

  /// Label of edge e traversed starting at `from`.
  Int label_from(int e, int from) const {
    const auto& ed = edges_[e];
    if (ed.u == from) return ed.label;
    return inverse_mod(ed.label, q_);
  }

 private:
  Int q_ = 2;
  std::vector<LabelledEdge> edges_;
  std::vector<std::vector<int>> adj_;
};

inline bool inside(const GroupLabelledGraph& g, const VertexSet& x, int e) {
  return x.test(g.edge(e).u) && x.test(g.edge(e).v);
}

/// Ordered label product around a closed walk is 1.
inline bool cycle_balanced(const GroupLabelledGraph& g, const std::vector<Step>& cycle) {
  if (cycle.empty()) throw Error(ErrorKind::kNotACycle, "empty walk");
  Int prod = 1;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Step& s = cycle[i];
    if (s.edge < 0 || s.edge >= g.num_edges()) throw Error(ErrorKind::kNotACycle, "unknown edge");
    const auto& ed = g.edge(s.edge);
    if (ed.u != s.from && ed.v != s.from) {
      throw Error(ErrorKind::kNotACycle, "edge does not leave the current vertex");
    }
    const int to = g.other(s.edge, s.from);
    const int next_from = cycle[(i + 1) % cycle.size()].from;
    if (to != next_from) throw Error(ErrorKind::kNotACycle, "walk is not closed");
    prod = mod_reduce(prod * g.label_from(s.edge, s.from), g.modulus());
  }
  return prod == 1;
}

struct BalanceResult {
  bool balanced = false;
  std::vector<Int> lambda;     // per vertex; 0 outside X
  std::vector<Step> witness;   // unbalanced cycle when !balanced
};

/// Balance of (G[X] - removed) via spanning-forest potentials with
/// lambda(root) = 1 and lambda(v) = label(u -> v) * lambda(u).
inline BalanceResult check_balanced(const GroupLabelledGraph& g, const VertexSet& x,
                                    const std::vector<char>& removed) {
  const int n = g.num_vertices();
  const Int q = g.modulus();
  BalanceResult res;
  res.lambda.assign(n, 0);
  std::vector<int> parent(n, -1), parent_edge(n, -1), depth(n, 0);
  std::vector<int> queue;
  for (int root = 0; root < n; ++root) {
    if (!x.test(root) || res.lambda[root] != 0) continue;
    res.lambda[root] = 1;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int a = queue[head];
      for (int e : g.incident(a)) {
        if (!removed.empty() && removed[e]) continue;
        const int b = g.other(e, a);
        if (!x.test(b)) continue;
        const Int want = mod_reduce(g.label_from(e, a) * res.lambda[a], q);
        if (res.lambda[b] == 0) {
          res.lambda[b] = want;
          parent[b] = a;
          parent_edge[b] = e;
          depth[b] = depth[a] + 1;
          queue.push_back(b);
          continue;
        }
        if (e == parent_edge[b] || e == parent_edge[a]) continue;
        if (res.lambda[b] == want) continue;
        // Unbalanced: close e = (a -> b) through the tree paths to the LCA.
        std::vector<Step> up_b, up_a;
        int ya = a, yb = b;
        while (depth[yb] > depth[ya]) {
          up_b.push_back({parent_edge[yb], yb});
          yb = parent[yb];
        }
        while (depth[ya] > depth[yb]) {
          up_a.push_back({parent_edge[ya], parent[ya]});
          ya = parent[ya];
        }
        while (ya != yb) {
          up_b.push_back({parent_edge[yb], yb});
          yb = parent[yb];
          up_a.push_back({parent_edge[ya], parent[ya]});
          ya = parent[ya];
        }
        res.witness.push_back({e, a});
        for (const auto& s : up_b) res.witness.push_back(s);
        for (auto it = up_a.rbegin(); it != up_a.rend(); ++it) res.witness.push_back(*it);
        res.lambda.assign(n, 0);
        return res;
      }
    }
  }
  res.balanced = true;
  return res;
}

inline std::vector<char> edge_mask(const GroupLabelledGraph& g, const EdgeSet& edges) {
  std::vector<char> mask(g.num_edges(), 0);
  for (int e : edges) mask[e] = 1;
  return mask;
}

inline BalanceResult check_balanced(const GroupLabelledGraph& g, const VertexSet& x,
                                    const EdgeSet& removed) {
  return check_balanced(g, x, edge_mask(g, removed));
}

/// Edges with exactly one endpoint in X.
inline EdgeSet boundary(const GroupLabelledGraph& g, const VertexSet& x) {
  EdgeSet out;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (x.test(g.edge(e).u) != x.test(g.edge(e).v)) out.push_back(e);
  }
  return out;
}

inline EdgeSet internal_edges(const GroupLabelledGraph& g, const VertexSet& x) {
  EdgeSet out;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (inside(g, x, e)) out.push_back(e);
  }
  return out;
}

/// Neighbours of X outside X.
inline VertexSet neighbourhood(const GroupLabelledGraph& g, const VertexSet& x) {
  VertexSet out(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (x.test(ed.u) && !x.test(ed.v)) out.set(ed.v);
    if (x.test(ed.v) && !x.test(ed.u)) out.set(ed.u);
  }
  return out;
}

/// |delta(X)| plus the internal edges of G[X] that are not kept.
inline int subgraph_cost(const GroupLabelledGraph& g, const VertexSet& x, const EdgeSet& kept) {
  const auto keep = edge_mask(g, kept);
  int c = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const bool iu = x.test(g.edge(e).u), iv = x.test(g.edge(e).v);
    if (iu != iv) ++c;
    if (iu && iv && !keep[e]) ++c;
  }
  return c;
}

/// Minimum cleaning set of G[X] of size at most `budget`, by iterative
/// deepening over the edges of witness cycles.
inline std::optional<EdgeSet> min_cleaning_set(const GroupLabelledGraph& g, const VertexSet& x,
                                               int budget) {
  std::vector<char> removed(g.num_edges(), 0);
  std::set<EdgeSet> seen;
  EdgeSet current;
  auto search = [&](auto&& self, int left) -> bool {
    auto r = check_balanced(g, x, removed);
    if (r.balanced) return true;
    if (left == 0) return false;
    EdgeSet key = current;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return false;
    EdgeSet branch;
    for (const auto& s : r.witness) branch.push_back(s.edge);
    std::sort(branch.begin(), branch.end());
    branch.erase(std::unique(branch.begin(), branch.end()), branch.end());
    for (int e : branch) {
      removed[e] = 1;
      current.push_back(e);
      if (self(self, left - 1)) return true;
      current.pop_back();
      removed[e] = 0;
    }
    return false;
  };
  for (int b = 0; b <= budget; ++b) {
    seen.clear();
    current.clear();
    std::fill(removed.begin(), removed.end(), 0);
    if (search(search, b)) {
      std::sort(current.begin(), current.end());
      return current;
    }
  }
  return std::nullopt;
}

struct ImportantSubset {
  VertexSet x;
  int cost = 0;
  EdgeSet cleaning;
};

/// Every connected vertex set of cost at most `k` with its minimum cleaning
/// set, each listed once.
inline std::vector<ImportantSubset> connected_sets_within_cost(const GroupLabelledGraph& g, int k) {
  const int n = g.num_vertices();
  std::vector<ImportantSubset> out;
  VertexSet x(n), excluded(n);
  auto excluded_edges = [&]() {
    int c = 0;
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if ((x.test(ed.u) && excluded.test(ed.v)) || (x.test(ed.v) && excluded.test(ed.u))) ++c;
    }
    return c;
  };
  auto visit = [&]() {
    const int bnd = static_cast<int>(boundary(g, x).size());
    if (bnd > k) return;
    auto clean = min_cleaning_set(g, x, k - bnd);
    if (clean) out.push_back({x, bnd + static_cast<int>(clean->size()), *clean});
  };
  auto grow = [&](auto&& self, std::vector<int> cand) -> void {
    if (excluded_edges() > k) return;
    visit();
    std::vector<int> excluded_here;
    while (!cand.empty()) {
      const int w = cand.back();
      cand.pop_back();
      std::vector<int> next = cand;
      for (int e : g.incident(w)) {
        const int y = g.other(e, w);
        if (x.test(y) || excluded.test(y) || y == w) continue;
        if (std::find(next.begin(), next.end(), y) == next.end()) next.push_back(y);
      }
      x.set(w);
      self(self, next);
      x.reset(w);
      excluded.set(w);
      excluded_here.push_back(w);
    }
    for (int w : excluded_here) excluded.reset(w);
  };
  for (int root = 0; root < n; ++root) {
    excluded = VertexSet(n);
    for (int y = 0; y < root; ++y) excluded.set(y);
    x.set(root);
    std::vector<int> cand;
    for (int e : g.incident(root)) {
      const int y = g.other(e, root);
      if (y > root && std::find(cand.begin(), cand.end(), y) == cand.end()) cand.push_back(y);
    }
    grow(grow, cand);
    x.reset(root);
  }
  return out;
}

/// Connected sets of cost at most k that no other connected set strictly
/// dominates (a superset of no larger cost).
inline std::vector<ImportantSubset> important_family(const GroupLabelledGraph& g, int k) {
  auto all = connected_sets_within_cost(g, k);
  std::vector<ImportantSubset> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      if (i == j || all[j].cost > all[i].cost) continue;
      if (all[i].x.subset_of(all[j].x) && !(all[i].x == all[j].x)) dominated = true;
    }
    if (!dominated) out.push_back(all[i]);
  }
  return out;
}

inline std::vector<ImportantSubset> enumerate_important_subsets(const GroupLabelledGraph& g, int v,
                                                                int k) {
  std::vector<ImportantSubset> out;
  for (auto& s : important_family(g, k)) {
    if (s.x.test(v)) out.push_back(std::move(s));
  }
  return out;
}

/// Connected components of G as vertex sets.
inline std::vector<VertexSet> components(const GroupLabelledGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> comp(n, -1);
  std::vector<VertexSet> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    VertexSet c(n);
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      c.set(a);
      for (int e : g.incident(a)) {
        const int b = g.other(e, a);
        if (comp[b] < 0) {
          comp[b] = comp[s];
          stack.push_back(b);
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace minlin
