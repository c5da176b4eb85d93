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

// Random objects shared by the unit tests and the acceptance runner.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "minlin.hpp"

namespace minlin::testing {

/// Kind of the minlin::Error thrown by f, or nullopt if nothing is thrown.
template <class F>
std::optional<ErrorKind> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline Int random_unit(Rng& rng, Int q) {
  for (;;) {
    const Int a = static_cast<Int>(rng.below(static_cast<std::uint64_t>(q)));
    if (is_unit_mod(a, q)) return a;
  }
}

/// Random group-labelled multigraph without loops.
inline GroupLabelledGraph random_graph(Rng& rng, int n, int m, Int q) {
  GroupLabelledGraph g(n, q);
  for (int i = 0; i < m; ++i) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    g.add_edge(u, v, random_unit(rng, q));
  }
  return g;
}

/// A graph with a planted connected balanced subgraph H on `x`: the edges of
/// G[x] outside `bad` agree with random potentials, `boundary` edges leave x.
struct PlantedGraph {
  GroupLabelledGraph g;
  VertexSet x;
  EdgeSet kept;  // E(H)
  int cost = 0;
};

inline PlantedGraph planted_graph(Rng& rng, int n, int h, int bad, int boundary, int extra, Int q) {
  PlantedGraph pg;
  pg.g = GroupLabelledGraph(n, q);
  pg.x = VertexSet(n);
  for (int v = 0; v < h; ++v) pg.x.set(v);
  std::vector<Int> lambda(n);
  for (auto& l : lambda) l = random_unit(rng, q);
  auto consistent = [&](int u, int v) {
    return mod_reduce(lambda[v] * inverse_mod(lambda[u], q), q);
  };
  std::vector<int> kept;
  // Spanning path plus chords inside x.
  for (int v = 1; v < h; ++v) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    kept.push_back(pg.g.add_edge(u, v, consistent(u, v)));
  }
  for (int i = 0; i < h / 2; ++i) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
    if (u != v) kept.push_back(pg.g.add_edge(u, v, consistent(u, v)));
  }
  for (int i = 0; i < bad && h >= 2; ++i) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(h - 1)));
    if (v >= u) ++v;
    pg.g.add_edge(u, v, random_unit(rng, q));
  }
  for (int i = 0; i < boundary && h < n; ++i) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
    const int v = h + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - h)));
    pg.g.add_edge(u, v, random_unit(rng, q));
  }
  for (int i = 0; i < extra && n - h >= 2; ++i) {
    const int u = h + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - h)));
    int v = h + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - h - 1)));
    if (v >= u) ++v;
    pg.g.add_edge(u, v, random_unit(rng, q));
  }
  std::sort(kept.begin(), kept.end());
  pg.kept = kept;
  pg.cost = subgraph_cost(pg.g, pg.x, pg.kept);
  return pg;
}

/// V(H) inside S and at most k edges of F touching V(H).
inline bool covers(const GroupLabelledGraph& g, const CoverOutput& c, const VertexSet& h, int k) {
  if (!h.subset_of(c.s)) return false;
  int touching = 0;
  for (int e : c.f) {
    if (h.test(g.edge(e).u) || h.test(g.edge(e).v)) ++touching;
  }
  return touching <= k;
}

/// Random instance of soft and crisp 2-clauses and unit clauses.
inline BoolInstance random_bool_instance(Rng& rng, int n, int m) {
  BoolInstance b;
  b.num_vars = n;
  auto lit = [&] {
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    return rng.coin() ? pos_lit(v) : neg_lit(v);
  };
  for (int i = 0; i < m; ++i) {
    BoolConstraint c;
    const int clauses = 1 + static_cast<int>(rng.below(3));
    for (int j = 0; j < clauses; ++j) {
      if (rng.below(4) == 0) {
        c.clauses.push_back({lit(), -1});
      } else {
        c.clauses.push_back({lit(), lit()});
      }
    }
    c.crisp = rng.below(5) == 0;
    b.constraints.push_back(std::move(c));
  }
  return b;
}

}  // namespace minlin::testing
