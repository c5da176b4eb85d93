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

// MinSat over 1- and 2-clauses. Constraints are conjunctions of clauses and
// cost one unit when any of their clauses fails; crisp constraints must hold.
//
// Literal encoding: 2 * var for the positive literal, 2 * var + 1 for its
// negation.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minlin/error.hpp"

namespace minlin {

constexpr int kBoolInfinite = std::numeric_limits<int>::max();

inline int pos_lit(int var) { return 2 * var; }
inline int neg_lit(int var) { return 2 * var + 1; }
inline int negate(int lit) { return lit ^ 1; }
inline int lit_var(int lit) { return lit >> 1; }
inline bool lit_negative(int lit) { return lit & 1; }

/// (a or b); b < 0 for a unit clause.
struct Clause {
  int a = 0;
  int b = -1;
  bool is_unit() const { return b < 0; }
};

using BoolAssignment = std::vector<char>;

inline bool lit_true(int lit, const BoolAssignment& beta) {
  return (beta[lit_var(lit)] != 0) != lit_negative(lit);
}

inline bool clause_holds(const Clause& c, const BoolAssignment& beta) {
  return lit_true(c.a, beta) || (!c.is_unit() && lit_true(c.b, beta));
}

struct BoolConstraint {
  std::vector<Clause> clauses;
  bool crisp = false;
  int origin = -1;  // equation id, or -1 for structural constraints
  int tag = 0;      // free-form classification used by the encoder
};

struct BoolInstance {
  int num_vars = 0;
  std::vector<BoolConstraint> constraints;
  int k = 0;
};

inline bool constraint_holds(const BoolConstraint& c, const BoolAssignment& beta) {
  return std::all_of(c.clauses.begin(), c.clauses.end(),
                     [&](const Clause& cl) { return clause_holds(cl, beta); });
}

inline int bool_cost(const BoolInstance& b, const BoolAssignment& beta) {
  int total = 0;
  for (const auto& c : b.constraints) {
    if (constraint_holds(c, beta)) continue;
    if (c.crisp) return kBoolInfinite;
    ++total;
  }
  return total;
}

struct TwoSatResult {
  bool sat = false;
  BoolAssignment model;
  std::vector<int> conflict_clauses;  // tags of clauses on the x => !x => x cycle
};

/// 2-SAT on tagged clauses through the SCCs of the implication graph.
inline TwoSatResult two_sat(int num_vars, const std::vector<Clause>& clauses,
                            const std::vector<int>& tags) {
  const int nodes = 2 * num_vars;
  std::vector<int> head(nodes, -1), next, to, src, arc_tag;
  auto add_arc = [&](int from, int dst, int tag) {
    src.push_back(from);
    to.push_back(dst);
    arc_tag.push_back(tag);
    next.push_back(head[from]);
    head[from] = static_cast<int>(to.size()) - 1;
  };
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const Clause& c = clauses[i];
    if (c.is_unit()) {
      add_arc(negate(c.a), c.a, tags[i]);
    } else {
      add_arc(negate(c.a), c.b, tags[i]);
      add_arc(negate(c.b), c.a, tags[i]);
    }
  }
  // Iterative Tarjan; components are numbered in reverse topological order.
  std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1), stack, call, it;
  std::vector<char> on_stack(nodes, 0);
  int counter = 0, ncomp = 0;
  for (int s = 0; s < nodes; ++s) {
    if (index[s] >= 0) continue;
    call.push_back(s);
    it.push_back(head[s]);
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      const int x = call.back();
      int& a = it.back();
      if (a >= 0) {
        const int y = to[a];
        a = next[a];
        if (index[y] < 0) {
          index[y] = low[y] = counter++;
          stack.push_back(y);
          on_stack[y] = 1;
          call.push_back(y);
          it.push_back(head[y]);
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      if (low[x] == index[x]) {
        for (;;) {
          const int y = stack.back();
          stack.pop_back();
          on_stack[y] = 0;
          comp[y] = ncomp;
          if (y == x) break;
        }
        ++ncomp;
      }
      call.pop_back();
      it.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[x]);
    }
  }
  TwoSatResult res;
  for (int v = 0; v < num_vars; ++v) {
    if (comp[pos_lit(v)] != comp[neg_lit(v)]) continue;
    // Recover x => !x and !x => x inside the component.
    auto path = [&](int from, int goal) {
      std::vector<int> via(nodes, -2);
      std::vector<int> queue{from};
      via[from] = -1;
      for (std::size_t h = 0; h < queue.size() && via[goal] == -2; ++h) {
        const int x = queue[h];
        for (int a = head[x]; a >= 0; a = next[a]) {
          const int y = to[a];
          if (via[y] != -2 || comp[y] != comp[from]) continue;
          via[y] = a;
          queue.push_back(y);
        }
      }
      std::vector<int> used;
      for (int y = goal; via[y] >= 0;) {
        const int a = via[y];
        used.push_back(arc_tag[a]);
        y = src[a];
      }
      return used;
    };
    auto p1 = path(pos_lit(v), neg_lit(v));
    auto p2 = path(neg_lit(v), pos_lit(v));
    p1.insert(p1.end(), p2.begin(), p2.end());
    std::sort(p1.begin(), p1.end());
    p1.erase(std::unique(p1.begin(), p1.end()), p1.end());
    res.conflict_clauses = std::move(p1);
    return res;
  }
  res.sat = true;
  res.model.assign(num_vars, 0);
  for (int v = 0; v < num_vars; ++v) res.model[v] = comp[pos_lit(v)] < comp[neg_lit(v)] ? 1 : 0;
  return res;
}

inline TwoSatResult two_sat(int num_vars, const std::vector<Clause>& clauses) {
  std::vector<int> tags(clauses.size());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<int>(i);
  return two_sat(num_vars, clauses, tags);
}

struct MinSatResult {
  bool yes = false;
  BoolAssignment beta;
  std::vector<int> violated;  // soft constraint indices
  int cost = 0;
};

/// Complete branching on conflicts: any solution deletes a soft constraint
/// from every conflict of the kept system. Iterative deepening makes the
/// returned cost optimal.
inline MinSatResult solve_minsat(const BoolInstance& b, int k) {
  for (const auto& c : b.constraints) {
    for (const auto& cl : c.clauses) {
      if (cl.a < 0 || cl.a >= 2 * b.num_vars || cl.b >= 2 * b.num_vars) {
        throw Error(ErrorKind::kUnsupportedRelation, "literal out of range");
      }
    }
  }
  std::vector<Clause> crisp_clauses;
  std::vector<int> crisp_tags;
  for (std::size_t i = 0; i < b.constraints.size(); ++i) {
    if (!b.constraints[i].crisp) continue;
    for (const auto& cl : b.constraints[i].clauses) {
      crisp_clauses.push_back(cl);
      crisp_tags.push_back(static_cast<int>(i));
    }
  }
  std::vector<char> deleted(b.constraints.size(), 0);
  std::set<std::vector<int>> seen;
  std::vector<int> current;
  MinSatResult res;
  bool crisp_conflict = false;
  auto search = [&](auto&& self, int left) -> bool {
    std::vector<Clause> clauses = crisp_clauses;
    std::vector<int> tags = crisp_tags;
    for (std::size_t i = 0; i < b.constraints.size(); ++i) {
      if (b.constraints[i].crisp || deleted[i]) continue;
      for (const auto& cl : b.constraints[i].clauses) {
        clauses.push_back(cl);
        tags.push_back(static_cast<int>(i));
      }
    }
    auto r = two_sat(b.num_vars, clauses, tags);
    if (r.sat) {
      res.yes = true;
      res.beta = std::move(r.model);
      return true;
    }
    std::vector<int> soft;
    for (int t : r.conflict_clauses) {
      if (!b.constraints[t].crisp) soft.push_back(t);
    }
    if (soft.empty()) {
      crisp_conflict = true;
      return false;
    }
    if (left == 0) return false;
    std::vector<int> key = current;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return false;
    for (int c : soft) {
      deleted[c] = 1;
      current.push_back(c);
      const bool ok = self(self, left - 1);
      current.pop_back();
      deleted[c] = 0;
      if (ok || crisp_conflict) return ok;
    }
    return false;
  };
  for (int budget = 0; budget <= k; ++budget) {
    seen.clear();
    current.clear();
    if (search(search, budget)) break;
    if (crisp_conflict) break;
  }
  if (!res.yes) return res;
  for (std::size_t i = 0; i < b.constraints.size(); ++i) {
    if (!constraint_holds(b.constraints[i], res.beta)) {
      if (b.constraints[i].crisp) throw Error(ErrorKind::kInternal, "minsat model violates a crisp constraint");
      res.violated.push_back(static_cast<int>(i));
    }
  }
  res.cost = static_cast<int>(res.violated.size());
  if (res.cost > k) throw Error(ErrorKind::kInternal, "minsat model exceeds budget");
  return res;
}

/// Enumeration oracle for at most 22 variables.
inline MinSatResult exhaustive_minsat(const BoolInstance& b, int k) {
  if (b.num_vars > 22) {
    throw Error(ErrorKind::kTooLarge, std::to_string(b.num_vars) + " variables exceed 22");
  }
  MinSatResult res;
  int best = kBoolInfinite;
  BoolAssignment beta(b.num_vars, 0);
  const std::uint32_t total = std::uint32_t{1} << b.num_vars;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    for (int v = 0; v < b.num_vars; ++v) beta[v] = (mask >> v) & 1;
    const int c = bool_cost(b, beta);
    if (c < best) {
      best = c;
      res.beta = beta;
      if (best == 0) break;
    }
  }
  if (best > k) return {};
  res.yes = true;
  res.cost = best;
  for (std::size_t i = 0; i < b.constraints.size(); ++i) {
    if (!constraint_holds(b.constraints[i], res.beta)) res.violated.push_back(static_cast<int>(i));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Gaifman graphs of bijunctive relations.

struct GaifmanResult {
  std::vector<Clause> formula;        // complete bijunctive formula
  std::vector<std::vector<char>> adj;  // Gaifman graph
  bool two_k2_free = false;
};

inline bool is_2k2_free(const std::vector<std::vector<char>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj[i][j]) edges.push_back({i, j});
    }
  }
  for (std::size_t x = 0; x < edges.size(); ++x) {
    const auto [a, b] = edges[x];
    for (std::size_t y = x + 1; y < edges.size(); ++y) {
      const auto [c, d] = edges[y];
      if (a == c || a == d || b == c || b == d) continue;
      if (!adj[a][c] && !adj[a][d] && !adj[b][c] && !adj[b][d]) return false;
    }
  }
  return true;
}

namespace detail {

/// Complete formula from projections: proj(i, j, x, y) tells whether some
/// tuple has t_i = x and t_j = y; unary(i, x) likewise.
template <typename Unary, typename Binary>
GaifmanResult complete_formula(int arity, Unary&& unary, Binary&& pair) {
  GaifmanResult res;
  res.adj.assign(arity, std::vector<char>(arity, 0));
  for (int i = 0; i < arity; ++i) {
    if (!unary(i, 0)) res.formula.push_back({pos_lit(i), -1});
    if (!unary(i, 1)) res.formula.push_back({neg_lit(i), -1});
  }
  for (int i = 0; i < arity; ++i) {
    for (int j = i + 1; j < arity; ++j) {
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          if (pair(i, j, x, y)) continue;
          // Forbid (x, y): clause (x_i != x) or (x_j != y).
          res.formula.push_back({x ? neg_lit(i) : pos_lit(i), y ? neg_lit(j) : pos_lit(j)});
          res.adj[i][j] = res.adj[j][i] = 1;
        }
      }
    }
  }
  res.two_k2_free = is_2k2_free(res.adj);
  return res;
}

}  // namespace detail

/// Relation given by explicit tuples over {0,1}^arity.
inline GaifmanResult gaifman_2k2_check(const std::vector<std::vector<char>>& relation) {
  if (relation.empty()) throw Error(ErrorKind::kNotBijunctive, "empty relation");
  const int arity = static_cast<int>(relation.front().size());
  if (arity > 24) throw Error(ErrorKind::kTooLarge, "relation arity exceeds 24");
  auto res = detail::complete_formula(
      arity,
      [&](int i, int x) {
        return std::any_of(relation.begin(), relation.end(), [&](const auto& t) { return t[i] == x; });
      },
      [&](int i, int j, int x, int y) {
        return std::any_of(relation.begin(), relation.end(),
                           [&](const auto& t) { return t[i] == x && t[j] == y; });
      });
  std::set<std::vector<char>> rel(relation.begin(), relation.end());
  std::size_t models = 0;
  BoolAssignment beta(arity, 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << arity); ++mask) {
    for (int v = 0; v < arity; ++v) beta[v] = (mask >> v) & 1;
    bool ok = true;
    for (const auto& cl : res.formula) {
      if (!clause_holds(cl, beta)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++models;
    if (!rel.count(beta)) throw Error(ErrorKind::kNotBijunctive, "complete formula admits extra tuples");
  }
  if (models != rel.size()) throw Error(ErrorKind::kNotBijunctive, "relation has duplicate tuples");
  return res;
}

/// Relation given as the solution set of a 2-CNF; projections are computed
/// with 2-SAT, so large arities stay tractable.
inline GaifmanResult gaifman_2k2_check(int arity, const std::vector<Clause>& formula) {
  auto sat_with = [&](std::vector<Clause> extra) {
    std::vector<Clause> all = formula;
    all.insert(all.end(), extra.begin(), extra.end());
    return two_sat(arity, all).sat;
  };
  if (!sat_with({})) throw Error(ErrorKind::kNotBijunctive, "empty relation");
  auto res = detail::complete_formula(
      arity, [&](int i, int x) { return sat_with({{x ? pos_lit(i) : neg_lit(i), -1}}); },
      [&](int i, int j, int x, int y) {
        return sat_with({{x ? pos_lit(i) : neg_lit(i), -1}, {y ? pos_lit(j) : neg_lit(j), -1}});
      });
  // The complete formula defines the relation iff it implies every input
  // clause, i.e. every input clause forbids a combination already missing.
  for (const auto& cl : formula) {
    std::vector<Clause> refute{{negate(cl.a), -1}};
    if (!cl.is_unit()) refute.push_back({negate(cl.b), -1});
    std::vector<Clause> all = res.formula;
    all.insert(all.end(), refute.begin(), refute.end());
    if (two_sat(arity, all).sat) throw Error(ErrorKind::kNotBijunctive, "formula not captured");
  }
  return res;
}

}  // namespace minlin
