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

// Level-i auxiliary graphs of a special instance over Z_{p^d} and the
// per-level cover data the solver attaches to them.

#pragma once

#include <cstdint>
#include <vector>

#include "minlin/biased_graph.hpp"
#include "minlin/equations.hpp"

namespace minlin {

/// G_i: copies v^0..v^i of every variable, labelled by units of Z_{p^(d-i)}.
/// A unit equation r*u = v gives edges u^j v^j (label r), a p-equation
/// p*u = v gives edges u^j v^(j+1) (label 1).
struct AuxGraph {
  int level = 0;
  int num_src = 0;
  GroupLabelledGraph g;
  std::vector<int> eqn_of;                 // edge -> special equation id
  std::vector<std::vector<int>> edges_of;  // special equation id -> edges

  int vertex(int v, int copy) const { return v * (level + 1) + copy; }
  int source_of(int x) const { return x / (level + 1); }
  int copy_of(int x) const { return x % (level + 1); }
};

inline AuxGraph build_aux_graph(const SpecialInstance& sp, int level) {
  AuxGraph a;
  a.level = level;
  a.num_src = sp.inst.num_vars();
  const Int q = sp.pp.pow(sp.pp.d - level);
  a.g = GroupLabelledGraph(a.num_src * (level + 1), q);
  a.edges_of.assign(sp.inst.eqs.size(), {});
  for (std::size_t id = 0; id < sp.inst.eqs.size(); ++id) {
    const SpecialShape sh = sp.shape(static_cast<int>(id));
    if (sh.kind == SpecialKind::kUnit) {
      for (int j = 0; j <= level; ++j) {
        const int e = a.g.add_edge(a.vertex(sh.u, j), a.vertex(sh.v, j), sh.r);
        a.eqn_of.push_back(static_cast<int>(id));
        a.edges_of[id].push_back(e);
      }
    } else if (sh.kind == SpecialKind::kP) {
      for (int j = 0; j < level; ++j) {
        const int e = a.g.add_edge(a.vertex(sh.u, j), a.vertex(sh.v, j + 1), 1);
        a.eqn_of.push_back(static_cast<int>(id));
        a.edges_of[id].push_back(e);
      }
    }
  }
  return a;
}

/// Cover data of one level i: the raw cover (S'_i, F'_i) of G_i, the derived
/// source-variable sets S_i and T_i, and the guessed units s_v for v in T_i.
struct LevelCover {
  VertexSet s_raw;
  EdgeSet f_raw;
  std::vector<char> s;
  std::vector<char> t;
  std::vector<Int> unit;  // s_v for v in T_i, else 0
  std::uint64_t seed = 0;
};

struct CoverAnnotation {
  std::vector<LevelCover> levels;  // index i in [0, d-2]
};

/// Fills S_i and T_i from the raw covers of all levels.
inline void derive_cover_sets(const std::vector<AuxGraph>& aux, CoverAnnotation& ann) {
  const int levels = static_cast<int>(ann.levels.size());
  if (levels == 0) return;
  const int n = aux[0].num_src;
  std::vector<std::vector<char>> touched(levels);
  for (int j = 0; j < levels; ++j) {
    touched[j].assign(aux[j].g.num_vertices(), 0);
    for (int e : ann.levels[j].f_raw) {
      touched[j][aux[j].g.edge(e).u] = 1;
      touched[j][aux[j].g.edge(e).v] = 1;
    }
  }
  for (int i = 0; i < levels; ++i) {
    auto& lc = ann.levels[i];
    lc.s.assign(n, 1);
    lc.t.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      for (int j = i; j < levels; ++j) {
        if (!ann.levels[j].s_raw.test(aux[j].vertex(v, i))) lc.s[v] = 0;
      }
      if (!lc.s[v]) continue;
      for (int j = i; j < levels; ++j) {
        if (touched[j][aux[j].vertex(v, i)]) lc.t[v] = 1;
      }
    }
    lc.unit.assign(n, 0);
  }
}

}  // namespace minlin
