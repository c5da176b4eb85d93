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

// Equation systems over Z_m with soft and crisp equations.
//
// Variables are dense indices into Instance::vars. An equation is either
// binary (a*u + b*v = c) or unary (a*u = c); its id is its position in
// Instance::eqs.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minlin/error.hpp"
#include "minlin/ring.hpp"

namespace minlin {

constexpr int kInfiniteCost = std::numeric_limits<int>::max();

struct Equation {
  Int a = 0;
  int u = 0;
  Int b = 0;
  int v = -1;  // -1 for unary equations
  Int c = 0;
  bool crisp = false;
  int id = 0;

  bool is_unary() const { return v < 0; }
};

using Assignment = std::vector<Int>;

struct Instance {
  RingSpec ring = factorize(2);
  std::vector<std::string> vars;
  std::vector<Equation> eqs;
  int k = 0;

  int num_vars() const { return static_cast<int>(vars.size()); }

  int find_var(const std::string& name) const {
    for (int i = 0; i < num_vars(); ++i) {
      if (vars[i] == name) return i;
    }
    return -1;
  }

  int add_var(const std::string& name) {
    vars.push_back(name);
    return num_vars() - 1;
  }

  /// Returns a variable name not yet in use, derived from `base`.
  std::string fresh_name(const std::string& base) const {
    if (find_var(base) < 0) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + "_" + std::to_string(i);
      if (find_var(cand) < 0) return cand;
    }
  }

  int add_binary(Int a, int u, Int b, int v, Int c, bool crisp) {
    const Int m = ring.m;
    Equation e;
    if (u == v) {
      e.a = mod_reduce(a + b, m);
      e.u = u;
    } else {
      e.a = mod_reduce(a, m);
      e.u = u;
      e.b = mod_reduce(b, m);
      e.v = v;
    }
    e.c = mod_reduce(c, m);
    e.crisp = crisp;
    e.id = static_cast<int>(eqs.size());
    eqs.push_back(e);
    return e.id;
  }

  int add_unary(Int a, int u, Int c, bool crisp) {
    Equation e;
    e.a = mod_reduce(a, ring.m);
    e.u = u;
    e.c = mod_reduce(c, ring.m);
    e.crisp = crisp;
    e.id = static_cast<int>(eqs.size());
    eqs.push_back(e);
    return e.id;
  }
};

inline bool satisfies(const Equation& e, const Assignment& alpha, Int m) {
  Int lhs = mod_reduce(e.a * alpha[e.u], m);
  if (!e.is_unary()) lhs = mod_reduce(lhs + e.b * alpha[e.v], m);
  return lhs == e.c;
}

/// Number of violated soft equations, or kInfiniteCost if a crisp one fails.
inline int cost(const Instance& inst, const Assignment& alpha) {
  int total = 0;
  for (const auto& e : inst.eqs) {
    if (satisfies(e, alpha, inst.ring.m)) continue;
    if (e.crisp) return kInfiniteCost;
    ++total;
  }
  return total;
}

namespace detail {

struct Row {
  std::vector<Int> coef;
  Int rhs = 0;
};

/// Triangular elimination over Z_{p^d}. Each step picks the remaining entry of
/// globally minimal valuation t as pivot, so every other entry of its row and
/// column is divisible by p^t. Returns false when inconsistent; otherwise
/// fills `witness` (free variables set to 0).
inline bool solve_prime_power_system(std::vector<Row> rows, const PrimePower& pp, int n,
                                     std::vector<Int>* witness) {
  const Int q = pp.q();
  std::vector<char> done(rows.size(), 0);
  std::vector<std::pair<int, int>> pivots;  // (row, column)
  std::vector<int> pivot_val;
  for (;;) {
    int best_r = -1, best_c = -1, best_t = pp.d;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (done[r]) continue;
      for (int c = 0; c < n; ++c) {
        if (rows[r].coef[c] == 0) continue;
        const int t = ord(rows[r].coef[c], pp);
        if (t < best_t) {
          best_t = t;
          best_r = static_cast<int>(r);
          best_c = c;
          if (t == 0) break;
        }
      }
      if (best_t == 0) break;
    }
    if (best_r < 0) break;
    Row& pr = rows[best_r];
    const Int pt = pp.pow(best_t);
    const Int unit = pr.coef[best_c] / pt;
    const Int inv = inverse_mod(unit, q);
    for (int c = 0; c < n; ++c) pr.coef[c] = mod_reduce(pr.coef[c] * inv, q);
    pr.rhs = mod_reduce(pr.rhs * inv, q);
    done[best_r] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (done[r] || rows[r].coef[best_c] == 0) continue;
      const Int f = rows[r].coef[best_c] / pt;
      for (int c = 0; c < n; ++c) {
        if (pr.coef[c] != 0) rows[r].coef[c] = mod_reduce(rows[r].coef[c] - f * pr.coef[c], q);
      }
      rows[r].rhs = mod_reduce(rows[r].rhs - f * pr.rhs, q);
    }
    pivots.push_back({best_r, best_c});
    pivot_val.push_back(best_t);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!done[r] && rows[r].rhs != 0) return false;
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (rows[pivots[i].first].rhs % pp.pow(pivot_val[i]) != 0) return false;
  }
  if (witness != nullptr) {
    witness->assign(n, 0);
    for (std::size_t i = pivots.size(); i-- > 0;) {
      const Row& row = rows[pivots[i].first];
      const int col = pivots[i].second;
      Int rest = row.rhs;
      for (int c = 0; c < n; ++c) {
        if (c != col && row.coef[c] != 0) rest = mod_reduce(rest - row.coef[c] * (*witness)[c], q);
      }
      (*witness)[col] = rest / pp.pow(pivot_val[i]);
    }
  }
  return true;
}

inline bool solve_system(const std::vector<const Equation*>& eqs, const RingSpec& ring, int n,
                         Assignment* witness) {
  std::vector<std::vector<Int>> parts;
  for (const auto& f : ring.factors) {
    const Int q = f.q();
    std::vector<Row> rows;
    rows.reserve(eqs.size());
    for (const Equation* e : eqs) {
      Row row;
      row.coef.assign(n, 0);
      row.coef[e->u] = mod_reduce(row.coef[e->u] + e->a, q);
      if (!e->is_unary()) row.coef[e->v] = mod_reduce(row.coef[e->v] + e->b, q);
      row.rhs = mod_reduce(e->c, q);
      rows.push_back(std::move(row));
    }
    std::vector<Int> part;
    if (!solve_prime_power_system(std::move(rows), f, n, witness ? &part : nullptr)) return false;
    parts.push_back(std::move(part));
  }
  if (witness != nullptr) {
    witness->assign(n, 0);
    std::vector<Int> residues(ring.factors.size());
    for (int x = 0; x < n; ++x) {
      for (std::size_t i = 0; i < parts.size(); ++i) residues[i] = parts[i][x];
      (*witness)[x] = crt_lift(ring, residues);
    }
  }
  return true;
}

}  // namespace detail

struct ConsistencyResult {
  bool consistent = false;
  Assignment witness;      // when consistent
  std::vector<int> core;   // equation ids, when inconsistent
};

/// Exact consistency check. An inconsistent system yields an
/// inclusion-minimal inconsistent core found by deletion filtering; when the
/// crisp equations alone are inconsistent the core is crisp-only.
inline ConsistencyResult is_consistent(const std::vector<Equation>& eqs, const RingSpec& ring,
                                       int num_vars) {
  ConsistencyResult res;
  std::vector<const Equation*> all;
  for (const auto& e : eqs) all.push_back(&e);
  if (detail::solve_system(all, ring, num_vars, &res.witness)) {
    res.consistent = true;
    return res;
  }
  res.witness.clear();
  std::vector<const Equation*> work;
  for (const auto* e : all) {
    if (e->crisp) work.push_back(e);
  }
  if (detail::solve_system(work, ring, num_vars, nullptr)) work = all;
  for (std::size_t i = 0; i < work.size();) {
    std::vector<const Equation*> trial;
    trial.reserve(work.size() - 1);
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (j != i) trial.push_back(work[j]);
    }
    if (!detail::solve_system(trial, ring, num_vars, nullptr)) {
      work = std::move(trial);
    } else {
      ++i;
    }
  }
  for (const auto* e : work) res.core.push_back(e->id);
  return res;
}

inline ConsistencyResult is_consistent(const Instance& inst) {
  return is_consistent(inst.eqs, inst.ring, inst.num_vars());
}

/// The instance with the given equation ids removed (ids are renumbered).
inline std::vector<Equation> without(const std::vector<Equation>& eqs,
                                     const std::vector<int>& deleted) {
  std::set<int> del(deleted.begin(), deleted.end());
  std::vector<Equation> out;
  for (const auto& e : eqs) {
    if (!del.count(e.id)) out.push_back(e);
  }
  return out;
}

struct OracleResult {
  int opt = kInfiniteCost;
  Assignment best;
};

/// Exhaustive minimum over all assignments. Crisp equations are first
/// propagated to arc consistency; the budget bounds the product of the
/// remaining domain sizes.
inline OracleResult brute_force_opt(const Instance& inst, double budget = 1e7) {
  const int n = inst.num_vars();
  const Int m = inst.ring.m;
  OracleResult res;
  if (n == 0) {
    res.opt = cost(inst, {});
    return res;
  }
  if (static_cast<double>(m) > budget) {
    throw Error(ErrorKind::kOracleTooLarge, "modulus exceeds oracle budget");
  }
  std::vector<std::vector<char>> dom(n, std::vector<char>(static_cast<std::size_t>(m), 1));
  std::vector<std::vector<int>> touching(n);
  for (const auto& e : inst.eqs) {
    touching[e.u].push_back(e.id);
    if (!e.is_unary()) touching[e.v].push_back(e.id);
  }
  // Arc consistency on crisp equations.
  std::vector<int> queue;
  std::vector<char> queued(inst.eqs.size(), 0);
  for (const auto& e : inst.eqs) {
    if (e.crisp) {
      queue.push_back(e.id);
      queued[e.id] = 1;
    }
  }
  bool empty = false;
  while (!queue.empty() && !empty) {
    const Equation& e = inst.eqs[queue.back()];
    queue.pop_back();
    queued[e.id] = 0;
    auto revise = [&](int x, int y, Int ax, Int ay) {
      // Drop values of x without support in y for ax*x + ay*y = c.
      bool changed = false;
      for (Int a = 0; a < m; ++a) {
        if (!dom[x][a]) continue;
        bool ok = false;
        for (Int b = 0; b < m && !ok; ++b) {
          if (dom[y][b] && mod_reduce(ax * a + ay * b, m) == e.c) ok = true;
        }
        if (!ok) {
          dom[x][a] = 0;
          changed = true;
        }
      }
      return changed;
    };
    std::vector<int> changed_vars;
    if (e.is_unary()) {
      bool changed = false;
      for (Int a = 0; a < m; ++a) {
        if (dom[e.u][a] && mod_reduce(e.a * a, m) != e.c) {
          dom[e.u][a] = 0;
          changed = true;
        }
      }
      if (changed) changed_vars.push_back(e.u);
    } else {
      if (revise(e.u, e.v, e.a, e.b)) changed_vars.push_back(e.u);
      if (revise(e.v, e.u, e.b, e.a)) changed_vars.push_back(e.v);
    }
    for (int x : changed_vars) {
      if (std::none_of(dom[x].begin(), dom[x].end(), [](char c) { return c != 0; })) empty = true;
      for (int id : touching[x]) {
        if (inst.eqs[id].crisp && !queued[id] && id != e.id) {
          queue.push_back(id);
          queued[id] = 1;
        }
      }
    }
  }
  if (empty) return res;
  double space = 1;
  for (int x = 0; x < n; ++x) {
    space *= static_cast<double>(std::count(dom[x].begin(), dom[x].end(), 1));
  }
  if (space > budget) {
    throw Error(ErrorKind::kOracleTooLarge,
                "search space " + std::to_string(static_cast<long long>(space)) +
                    " exceeds budget");
  }
  // Order variables so that equations close as early as possible.
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  std::vector<int> links(n, 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int x = 0; x < n; ++x) {
      if (!placed[x] && (pick < 0 || links[x] > links[pick])) pick = x;
    }
    placed[pick] = 1;
    order.push_back(pick);
    for (int id : touching[pick]) {
      const auto& e = inst.eqs[id];
      if (!e.is_unary()) ++links[e.u == pick ? e.v : e.u];
    }
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> closing(n);
  for (const auto& e : inst.eqs) {
    int last = pos[e.u];
    if (!e.is_unary()) last = std::max(last, pos[e.v]);
    closing[last].push_back(e.id);
  }
  Assignment alpha(n, 0);
  int best = kInfiniteCost;
  Assignment best_alpha;
  auto dfs = [&](auto&& self, int depth, int acc) -> void {
    if (acc >= best) return;
    if (depth == n) {
      best = acc;
      best_alpha = alpha;
      return;
    }
    const int x = order[depth];
    for (Int a = 0; a < m; ++a) {
      if (!dom[x][a]) continue;
      alpha[x] = a;
      int extra = 0;
      bool dead = false;
      for (int id : closing[depth]) {
        const auto& e = inst.eqs[id];
        if (!satisfies(e, alpha, m)) {
          if (e.crisp) {
            dead = true;
            break;
          }
          ++extra;
        }
      }
      if (!dead) self(self, depth + 1, acc + extra);
      if (best == 0) return;
    }
  };
  dfs(dfs, 0, 0);
  res.opt = best;
  res.best = best_alpha;
  return res;
}

/// Minimum number of soft equations whose deletion leaves a consistent
/// system, found by trying deletion sets in order of increasing size. Returns
/// kInfiniteCost if none of size <= max_size works.
inline int brute_force_deletion_opt(const Instance& inst, int max_size) {
  std::vector<int> soft;
  for (const auto& e : inst.eqs) {
    if (!e.crisp) soft.push_back(e.id);
  }
  const int ns = static_cast<int>(soft.size());
  for (int size = 0; size <= std::min(max_size, ns); ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      std::vector<int> del;
      for (int i : pick) del.push_back(soft[i]);
      if (is_consistent(without(inst.eqs, del), inst.ring, inst.num_vars()).consistent) {
        return size;
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == ns - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return kInfiniteCost;
}

// ---------------------------------------------------------------------------
// Special form.

enum class SpecialKind { kOne, kUnit, kP };

/// Shape of an equation of a special instance: s = 1, r*u = v with r a unit,
/// or p*u = v.
struct SpecialShape {
  SpecialKind kind = SpecialKind::kOne;
  int u = 0;
  int v = -1;
  Int r = 1;
};

/// A special instance over Z_{p^d}. Binary equations are stored as
/// r*u + (q-1)*v = 0. The original variables keep their indices; `origin`
/// maps each equation to the original equation it encodes, or -1 for the
/// auxiliary chain and s = 1.
struct SpecialInstance {
  Instance inst;
  PrimePower pp;
  int one = 0;
  std::vector<int> origin;
  int num_original_vars = 0;

  SpecialShape shape(int id) const {
    const Equation& e = inst.eqs[id];
    if (e.is_unary()) return {SpecialKind::kOne, e.u, -1, 1};
    if (is_unit(e.a, pp)) return {SpecialKind::kUnit, e.u, e.v, e.a};
    return {SpecialKind::kP, e.u, e.v, pp.p};
  }
};

namespace detail {

/// Normalizes a simple equation to (a, u, v) meaning a*u = v, or for a crisp
/// unary (a, -1, v) meaning v = a. Returns false if the equation is not simple.
inline bool simple_shape(const Equation& e, const PrimePower& pp, Int* a, int* u, int* v) {
  const Int q = pp.q();
  if (e.is_unary()) {
    if (!e.crisp || !is_unit(e.a, pp)) return false;
    *a = mod_reduce(e.c * inverse_mod(e.a, q), q);
    *u = -1;
    *v = e.u;
    return true;
  }
  if (e.c != 0) return false;
  if (is_unit(e.b, pp)) {
    *a = mod_reduce(-e.a * inverse_mod(e.b, q), q);
    *u = e.u;
    *v = e.v;
    return true;
  }
  if (is_unit(e.a, pp)) {
    *a = mod_reduce(-e.b * inverse_mod(e.a, q), q);
    *u = e.v;
    *v = e.u;
    return true;
  }
  return false;
}

}  // namespace detail

inline bool is_simple(const Instance& inst) {
  if (!inst.ring.is_prime_power()) return false;
  Int a;
  int u, v;
  for (const auto& e : inst.eqs) {
    if (!detail::simple_shape(e, inst.ring.factors[0], &a, &u, &v)) return false;
  }
  return true;
}

/// Rewrites a simple instance into the three special shapes, preserving
/// the optimum and k.
inline SpecialInstance special_form(const Instance& in) {
  if (!in.ring.is_prime_power()) {
    throw Error(ErrorKind::kNotSimple, "modulus is not a prime power");
  }
  SpecialInstance out;
  out.pp = in.ring.factors[0];
  const PrimePower& pp = out.pp;
  const Int q = pp.q();
  out.inst.ring = in.ring;
  out.inst.k = in.k;
  out.inst.vars = in.vars;
  out.num_original_vars = in.num_vars();
  out.one = out.inst.add_var(out.inst.fresh_name("s"));
  out.inst.add_unary(1, out.one, 1, true);
  out.origin.push_back(-1);
  for (const auto& e : in.eqs) {
    Int a;
    int u, v;
    if (!detail::simple_shape(e, pp, &a, &u, &v)) {
      throw Error(ErrorKind::kNotSimple, "equation " + std::to_string(e.id) + " is not simple");
    }
    if (u < 0) u = out.one;
    const int ell = ord(a, pp);
    const Int r = a == 0 ? 1 : a / pp.pow(ell);
    int src = u;
    for (int j = 1; j <= ell; ++j) {
      const int z = out.inst.add_var(out.inst.fresh_name("z" + std::to_string(e.id) + "_" +
                                                         std::to_string(j)));
      out.inst.add_binary(pp.p, src, q - 1, z, 0, true);
      out.origin.push_back(-1);
      src = z;
    }
    out.inst.add_binary(r, src, q - 1, v, 0, e.crisp);
    out.origin.push_back(e.id);
  }
  return out;
}

}  // namespace minlin

namespace minlin {

/// Extends an assignment of the original variables to the special instance:
/// s = 1 and every chain variable takes the value its crisp equation forces.
inline Assignment extend_to_special(const SpecialInstance& sp, const Assignment& alpha) {
  Assignment out(sp.inst.num_vars(), 0);
  std::copy(alpha.begin(), alpha.begin() + sp.num_original_vars, out.begin());
  out[sp.one] = 1;
  for (std::size_t id = 0; id < sp.inst.eqs.size(); ++id) {
    const Equation& e = sp.inst.eqs[id];
    if (sp.origin[id] >= 0 || e.is_unary()) continue;
    out[e.v] = mod_reduce(sp.pp.p * out[e.u], sp.pp.q());
  }
  return out;
}

}  // namespace minlin
