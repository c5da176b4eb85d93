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

// Boolean coset relaxation of special instances over Z_{p^d}.
//
// Every source variable v owns one Boolean variable per proper coset
// S(s, l, i); it is true when the value of v lies in that coset. All
// variables of v false means v = 0. Boolean variable ids are
// v * cosets.size() + position of the coset in all_cosets().

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "minlin/aux_graph.hpp"
#include "minlin/equations.hpp"
#include "minlin/minsat.hpp"
#include "minlin/ring.hpp"

namespace minlin {

enum ConstraintTag : int {
  kTagLaminar = 0,  // K(v)
  kTagOne = 1,      // s = 1
  kTagUnit = 2,     // r*u = v
  kTagP = 3,        // p*u = v
  kTagReduce = 4,   // v outside S_i
  kTagImply = 5,    // v in T_i with guessed unit
};

struct BoolEncoding {
  PrimePower pp;
  int num_src = 0;
  std::vector<Coset> cosets;
  std::map<Coset, int> local;
  BoolInstance inst;
  std::vector<int> eq_constraint;  // special equation id -> constraint index

  int nb() const { return static_cast<int>(cosets.size()); }
  int var(int v, const Coset& c) const { return v * nb() + local.at(c); }
  int var(int v, Int suffix, int len, int order) const {
    return var(v, Coset{order, len, suffix});
  }
  int singleton(int v, Int value) const { return var(v, singleton_coset(value, pp)); }
};

inline std::vector<Clause> laminar_clauses(const BoolEncoding& enc, int v) {
  std::vector<Clause> out;
  const int nb = enc.nb();
  for (int x = 0; x < nb; ++x) {
    for (int y = x + 1; y < nb; ++y) {
      const int a = v * nb + x, b = v * nb + y;
      switch (coset_relation(enc.cosets[x], enc.cosets[y], enc.pp)) {
        case CosetRelation::kDisjoint:
          out.push_back({neg_lit(a), neg_lit(b)});
          break;
        case CosetRelation::kProperSubset:
          out.push_back({neg_lit(a), pos_lit(b)});
          break;
        case CosetRelation::kProperSuperset:
          out.push_back({neg_lit(b), pos_lit(a)});
          break;
        case CosetRelation::kEqual:
          break;
      }
    }
  }
  return out;
}

inline void add_iff(std::vector<Clause>& out, int a, int b) {
  out.push_back({neg_lit(a), pos_lit(b)});
  out.push_back({pos_lit(a), neg_lit(b)});
}

/// Equation-specific clauses of a special equation (K(u), K(v) are separate
/// crisp constraints).
inline std::vector<Clause> equation_clauses(const BoolEncoding& enc, const SpecialShape& sh) {
  std::vector<Clause> out;
  const PrimePower& pp = enc.pp;
  if (sh.kind == SpecialKind::kOne) {
    out.push_back({pos_lit(enc.singleton(sh.u, 1)), -1});
  } else if (sh.kind == SpecialKind::kUnit) {
    for (const auto& c : enc.cosets) {
      const Int b = mod_reduce(c.suffix * sh.r, pp.pow(c.suffix_len));
      add_iff(out, enc.var(sh.u, c), enc.var(sh.v, b, c.suffix_len, c.order));
    }
  } else {
    for (const auto& c : enc.cosets) {
      if (c.order == 0) out.push_back({neg_lit(enc.var(sh.v, c)), -1});
    }
    for (const auto& c : enc.cosets) {
      if (c.order + c.suffix_len + 1 <= pp.d) {
        add_iff(out, enc.var(sh.u, c), enc.var(sh.v, c.suffix, c.suffix_len, c.order + 1));
      }
    }
  }
  return out;
}

/// bool(I): crisp K(v) per variable and one constraint per equation.
inline BoolEncoding encode(const SpecialInstance& sp) {
  BoolEncoding enc;
  enc.pp = sp.pp;
  enc.num_src = sp.inst.num_vars();
  enc.cosets = all_cosets(sp.pp);
  for (int i = 0; i < enc.nb(); ++i) enc.local[enc.cosets[i]] = i;
  enc.inst.num_vars = enc.num_src * enc.nb();
  enc.inst.k = sp.inst.k;
  for (int v = 0; v < enc.num_src; ++v) {
    BoolConstraint c;
    c.clauses = laminar_clauses(enc, v);
    c.crisp = true;
    c.tag = kTagLaminar;
    if (!c.clauses.empty()) enc.inst.constraints.push_back(std::move(c));
  }
  for (std::size_t id = 0; id < sp.inst.eqs.size(); ++id) {
    const SpecialShape sh = sp.shape(static_cast<int>(id));
    BoolConstraint c;
    c.clauses = equation_clauses(enc, sh);
    c.crisp = sp.inst.eqs[id].crisp;
    c.origin = static_cast<int>(id);
    c.tag = sh.kind == SpecialKind::kOne ? kTagOne : sh.kind == SpecialKind::kUnit ? kTagUnit : kTagP;
    enc.eq_constraint.push_back(static_cast<int>(enc.inst.constraints.size()));
    enc.inst.constraints.push_back(std::move(c));
  }
  return enc;
}

/// Boolean image of an assignment: the singleton of alpha(v) and every coset
/// containing it.
inline BoolAssignment lift(const BoolEncoding& enc, const Assignment& alpha) {
  BoolAssignment beta(enc.inst.num_vars, 0);
  for (int v = 0; v < enc.num_src; ++v) {
    const Int a = mod_reduce(alpha[v], enc.pp.q());
    if (a == 0) continue;
    for (int x = 0; x < enc.nb(); ++x) {
      if (coset_contains(enc.cosets[x], a, enc.pp)) beta[v * enc.nb() + x] = 1;
    }
  }
  return beta;
}

enum class VarKind { kZero, kUnambiguous, kAmbiguous };

struct VarState {
  VarKind kind = VarKind::kZero;
  Int value = 0;  // when unambiguous
  int order = 0;
  Int suffix = 0;
  int weight = 0;
};

inline bool laminar_holds(const BoolEncoding& enc, const BoolAssignment& beta, int v) {
  for (const auto& cl : laminar_clauses(enc, v)) {
    if (!clause_holds(cl, beta)) return false;
  }
  return true;
}

/// Order, suffix and weight from the true variable with the longest suffix.
inline VarState classify(const BoolEncoding& enc, const BoolAssignment& beta, int v) {
  if (!laminar_holds(enc, beta, v)) {
    throw Error(ErrorKind::kNotFiniteCost, "laminar constraints of variable " + std::to_string(v) + " fail");
  }
  VarState st;
  int best = -1;
  for (int x = 0; x < enc.nb(); ++x) {
    if (!beta[v * enc.nb() + x]) continue;
    if (best < 0 || enc.cosets[x].suffix_len > enc.cosets[best].suffix_len) best = x;
  }
  if (best < 0) return st;
  const Coset& c = enc.cosets[best];
  st.order = c.order;
  st.suffix = c.suffix;
  st.weight = c.suffix_len;
  if (c.is_singleton(enc.pp)) {
    st.kind = VarKind::kUnambiguous;
    st.value = c.suffix * enc.pp.pow(c.order);
  } else {
    st.kind = VarKind::kAmbiguous;
  }
  return st;
}

/// I+: bool(I) plus the crisp domain reductions and guessed-unit implications
/// of every level.
inline BoolInstance annotate(const BoolEncoding& enc, const CoverAnnotation& ann) {
  BoolInstance out = enc.inst;
  const PrimePower& pp = enc.pp;
  for (int i = 0; i < static_cast<int>(ann.levels.size()); ++i) {
    const LevelCover& lc = ann.levels[i];
    for (int v = 0; v < enc.num_src; ++v) {
      if (!lc.s[v]) {
        BoolConstraint c;
        c.crisp = true;
        c.tag = kTagReduce;
        for (Int a = 1; a < pp.p; ++a) c.clauses.push_back({neg_lit(enc.var(v, a, 1, i)), -1});
        out.constraints.push_back(std::move(c));
      }
      if (lc.t[v]) {
        const Int sv = lc.unit[v];
        const int target = enc.singleton(v, sv * pp.pow(i));
        BoolConstraint c;
        c.crisp = true;
        c.tag = kTagImply;
        for (int l = 1; i + l <= pp.d; ++l) {
          const Int ql = pp.pow(l);
          for (Int a = 1; a < ql; ++a) {
            if (a % pp.p == 0) continue;
            const int x = enc.var(v, a, l, i);
            if (a == mod_reduce(sv, ql)) {
              if (x != target) c.clauses.push_back({neg_lit(x), pos_lit(target)});
            } else {
              c.clauses.push_back({neg_lit(x), -1});
            }
          }
        }
        out.constraints.push_back(std::move(c));
      }
    }
  }
  return out;
}

/// Extends an ambiguous finite-cost assignment of I+ to an unambiguous one
/// whose violated constraints are a subset of the original's. Level
/// d - l - 1 resolves the l-ambiguous variables through a consistent
/// labelling of the cleaned, covered part of its auxiliary graph.
inline BoolAssignment disambiguate(const BoolEncoding& enc, const BoolInstance& plus,
                                   const std::vector<AuxGraph>& aux, const CoverAnnotation& ann,
                                   BoolAssignment beta) {
  const PrimePower& pp = enc.pp;
  const int d = pp.d;
  for (const auto& c : plus.constraints) {
    if (c.crisp && !constraint_holds(c, beta)) {
      throw Error(ErrorKind::kNotFiniteCost, "assignment violates a crisp constraint");
    }
  }
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kInconsistentCoverData, what); };
  for (;;) {
    std::vector<VarState> st(enc.num_src);
    int ell = d + 1;
    for (int v = 0; v < enc.num_src; ++v) {
      st[v] = classify(enc, beta, v);
      if (st[v].kind == VarKind::kAmbiguous) ell = std::min(ell, st[v].weight);
    }
    if (ell > d) return beta;
    const int level = d - ell - 1;
    if (level < 0 || level >= static_cast<int>(aux.size())) fail("ambiguous weight without a level");
    const AuxGraph& ag = aux[level];
    const LevelCover& lc = ann.levels[level];
    std::vector<char> satisfied(plus.constraints.size(), 0);
    for (std::size_t c = 0; c < plus.constraints.size(); ++c) {
      satisfied[c] = constraint_holds(plus.constraints[c], beta);
    }
    // G' = (G_L - F'_L - ed_L(Z))[S'] with S' = {v^i in S'_L : v in S_i}.
    std::vector<char> removed(ag.g.num_edges(), 0);
    for (int e : lc.f_raw) removed[e] = 1;
    for (std::size_t id = 0; id < enc.eq_constraint.size(); ++id) {
      if (satisfied[enc.eq_constraint[id]]) continue;
      for (int e : ag.edges_of[id]) removed[e] = 1;
    }
    VertexSet keep(ag.g.num_vertices());
    for (int v = 0; v < enc.num_src; ++v) {
      for (int i = 0; i <= level; ++i) {
        const int x = ag.vertex(v, i);
        if (lc.s_raw.test(x) && ann.levels[i].s[v]) keep.set(x);
      }
    }
    const auto bal = check_balanced(ag.g, keep, removed);
    if (!bal.balanced) fail("cleaned cover of level " + std::to_string(level) + " is unbalanced");
    // Components of G'.
    std::vector<int> comp(ag.g.num_vertices(), -1);
    int ncomp = 0;
    for (int s = 0; s < ag.g.num_vertices(); ++s) {
      if (!keep.test(s) || comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (int e : ag.g.incident(a)) {
          if (removed[e]) continue;
          const int b = ag.g.other(e, a);
          if (keep.test(b) && comp[b] < 0) {
            comp[b] = ncomp;
            stack.push_back(b);
          }
        }
      }
      ++ncomp;
    }
    const Int mod = pp.pow(ell + 1);
    std::vector<Int> shift(ncomp, 0);
    for (int v = 0; v < enc.num_src; ++v) {
      if (st[v].kind != VarKind::kAmbiguous || st[v].weight != ell) continue;
      const int x = ag.vertex(v, st[v].order);
      if (!keep.test(x)) fail("ambiguous variable " + std::to_string(v) + " has no copy in the cover");
      if (shift[comp[x]] == 0) {
        // Lowest vertex id of the component fixes c.
        shift[comp[x]] = mod_reduce(inverse_mod(bal.lambda[x], mod) * st[v].suffix, mod);
      }
    }
    for (int v = 0; v < enc.num_src; ++v) {
      if (st[v].kind != VarKind::kAmbiguous || st[v].weight != ell) continue;
      const int x = ag.vertex(v, st[v].order);
      const Int a = mod_reduce(bal.lambda[x] * shift[comp[x]], mod);
      if (a % pp.pow(ell) != st[v].suffix) fail("labelling disagrees with suffix of variable " + std::to_string(v));
      beta[enc.var(v, a, ell + 1, st[v].order)] = 1;
    }
    for (std::size_t c = 0; c < plus.constraints.size(); ++c) {
      if (satisfied[c] && !constraint_holds(plus.constraints[c], beta)) {
        fail("disambiguation broke constraint " + std::to_string(c));
      }
    }
  }
}

/// Assignment read off an unambiguous Boolean assignment.
inline Assignment debool(const BoolEncoding& enc, const BoolAssignment& beta) {
  Assignment alpha(enc.num_src, 0);
  for (int v = 0; v < enc.num_src; ++v) {
    const auto st = classify(enc, beta, v);
    if (st.kind == VarKind::kAmbiguous) {
      throw Error(ErrorKind::kStillAmbiguous, "variable " + std::to_string(v) + " is ambiguous");
    }
    alpha[v] = st.value;
  }
  return alpha;
}

/// The relation of a constraint over its own variables, as a 2-CNF in local
/// indices: K of every touched source variable plus the constraint clauses.
struct LocalRelation {
  int arity = 0;
  std::vector<Clause> formula;
};

inline LocalRelation local_relation(const BoolEncoding& enc, const BoolConstraint& c) {
  std::set<int> srcs;
  for (const auto& cl : c.clauses) {
    srcs.insert(lit_var(cl.a) / enc.nb());
    if (!cl.is_unit()) srcs.insert(lit_var(cl.b) / enc.nb());
  }
  std::map<int, int> pos;
  for (int v : srcs) pos[v] = static_cast<int>(pos.size());
  auto remap = [&](int lit) {
    const int var = lit_var(lit);
    const int local_var = pos[var / enc.nb()] * enc.nb() + var % enc.nb();
    return 2 * local_var + (lit & 1);
  };
  LocalRelation r;
  r.arity = static_cast<int>(srcs.size()) * enc.nb();
  for (int v : srcs) {
    for (const auto& cl : laminar_clauses(enc, v)) {
      r.formula.push_back({remap(cl.a), cl.is_unit() ? -1 : remap(cl.b)});
    }
  }
  for (const auto& cl : c.clauses) {
    r.formula.push_back({remap(cl.a), cl.is_unit() ? -1 : remap(cl.b)});
  }
  return r;
}

}  // namespace minlin
