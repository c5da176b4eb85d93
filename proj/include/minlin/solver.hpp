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

// End-to-end decision procedures for Min-2-Lin(Z_m).
//
//   solve_prime_power   covers + Boolean relaxation + MinSat over Z_{p^d}
//   solve_exact_fallback  branching on infeasibility cores, any m
//   solve_general       per-factor solving and CRT recombination

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "minlin/aux_graph.hpp"
#include "minlin/boolrelax.hpp"
#include "minlin/covering.hpp"
#include "minlin/equations.hpp"
#include "minlin/minsat.hpp"
#include "minlin/rng.hpp"

namespace minlin {

enum class Verdict { kNo, kYes };

enum class Mode { kRandomized, kDerandomized, kFallback, kApprox };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kRandomized:
      return "rand";
    case Mode::kDerandomized:
      return "derand";
    case Mode::kFallback:
      return "fallback";
    case Mode::kApprox:
      return "approx";
  }
  return "?";
}

struct SolveOptions {
  Mode mode = Mode::kRandomized;
  int trials = 256;
  std::uint64_t seed = 1;
  double budget = 2e5;       // cover-free and function family sizes
  bool relax_check = true;   // skip trials when bool(I) already needs > k
};

struct Solution {
  Verdict verdict = Verdict::kNo;
  std::vector<int> deleted;  // original equation ids
  Assignment witness;
  int bound = 0;
  std::string mode;
  std::vector<std::uint64_t> seeds;
  int trials_used = 0;

  bool yes() const { return verdict == Verdict::kYes; }
};

/// Yes-certificate check by direct evaluation.
inline bool verify_solution(const Instance& inst, const Solution& sol) {
  if (!sol.yes()) return false;
  if (static_cast<int>(sol.witness.size()) != inst.num_vars()) return false;
  std::set<int> del;
  for (int id : sol.deleted) {
    if (id < 0 || id >= static_cast<int>(inst.eqs.size())) return false;
    if (inst.eqs[id].crisp) return false;
    if (!del.insert(id).second) return false;
  }
  if (static_cast<int>(del.size()) > sol.bound) return false;
  for (const auto& e : inst.eqs) {
    if (del.count(e.id)) continue;
    if (!satisfies(e, sol.witness, inst.ring.m)) return false;
  }
  return true;
}

inline nlohmann::json solution_to_json(const Instance& inst, const Solution& sol) {
  nlohmann::json j;
  j["verdict"] = sol.yes() ? "Yes" : "No";
  j["deleted"] = sol.deleted;
  nlohmann::json w = nlohmann::json::object();
  for (std::size_t v = 0; v < sol.witness.size(); ++v) w[inst.vars[v]] = sol.witness[v];
  j["witness"] = w;
  j["bound"] = sol.bound;
  j["mode"] = sol.mode;
  j["seeds"] = sol.seeds;
  j["trials"] = sol.trials_used;
  return j;
}

inline Solution solution_from_json(const Instance& inst, const nlohmann::json& j) {
  Solution sol;
  try {
    sol.verdict = j.at("verdict").get<std::string>() == "Yes" ? Verdict::kYes : Verdict::kNo;
    sol.deleted = j.value("deleted", std::vector<int>{});
    sol.bound = j.at("bound").get<int>();
    sol.mode = j.value("mode", std::string());
    sol.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    sol.trials_used = j.value("trials", 0);
    if (j.contains("witness")) {
      sol.witness.assign(inst.num_vars(), 0);
      for (auto it = j["witness"].begin(); it != j["witness"].end(); ++it) {
        const int v = inst.find_var(it.key());
        if (v < 0) throw Error(ErrorKind::kUndeclaredVariable, "witness names unknown variable " + it.key());
        sol.witness[v] = it.value().get<Int>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSyntaxError, std::string("solution json: ") + e.what());
  }
  return sol;
}

/// Fills `deleted` with the equations the witness violates.
inline void attach_violations(const Instance& inst, Solution& sol) {
  sol.deleted.clear();
  for (const auto& e : inst.eqs) {
    if (!satisfies(e, sol.witness, inst.ring.m)) sol.deleted.push_back(e.id);
  }
}

// ---------------------------------------------------------------------------
// Exact fallback.

namespace detail {

struct CoreSearch {
  const Instance& inst;
  std::set<std::vector<int>> failed;

  std::optional<Assignment> run(std::vector<int>& del, int budget) {
    if (failed.count(del)) return std::nullopt;
    const auto r = is_consistent(without(inst.eqs, del), inst.ring, inst.num_vars());
    if (r.consistent) return r.witness;
    if (budget > 0) {
      for (int id : r.core) {
        if (inst.eqs[id].crisp) continue;
        std::vector<int> next = del;
        next.insert(std::lower_bound(next.begin(), next.end(), id), id);
        if (auto w = run(next, budget - 1)) {
          del = std::move(next);
          return w;
        }
      }
    }
    failed.insert(del);
    return std::nullopt;
  }
};

}  // namespace detail

/// Exact decision: any consistent subsystem must drop a soft member of every
/// infeasibility core. Iterative deepening returns a minimum deletion set.
inline Solution solve_exact_fallback(const Instance& inst, int k) {
  Solution sol;
  sol.bound = k;
  sol.mode = mode_name(Mode::kFallback);
  for (int budget = 0; budget <= k; ++budget) {
    detail::CoreSearch search{inst, {}};
    std::vector<int> del;
    if (auto w = search.run(del, budget)) {
      sol.verdict = Verdict::kYes;
      sol.witness = *w;
      attach_violations(inst, sol);
      return sol;
    }
    if (budget == 0) {
      const auto r = is_consistent(inst);
      const bool crisp_core = std::all_of(r.core.begin(), r.core.end(),
                                          [&](int id) { return inst.eqs[id].crisp; });
      if (crisp_core) return sol;
    }
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Prime powers.

/// Everything a trial needs that does not depend on the random choices.
struct PrimePowerContext {
  SpecialInstance sp;
  BoolEncoding enc;
  std::vector<AuxGraph> aux;
  std::vector<CoverFamily> fams;
  int k = 0;

  PrimePowerContext(const Instance& inst, int k_) : sp(special_form(inst)), k(k_) {
    sp.inst.k = k;
    enc = encode(sp);
    enc.inst.k = k;
    for (int i = 0; i + 2 <= sp.pp.d; ++i) {
      aux.push_back(build_aux_graph(sp, i));
      fams.push_back(prepare_cover(aux.back().g, 2 * k));
    }
  }

  int levels() const { return static_cast<int>(aux.size()); }
};

/// Runs MinSat on the annotated relaxation and turns a Yes into a certified
/// solution of the original instance.
inline std::optional<Solution> finish_trial(const Instance& inst, const PrimePowerContext& ctx,
                                            CoverAnnotation& ann) {
  const BoolInstance plus = annotate(ctx.enc, ann);
  const MinSatResult r = solve_minsat(plus, ctx.k);
  if (!r.yes) return std::nullopt;
  const BoolAssignment beta = disambiguate(ctx.enc, plus, ctx.aux, ann, r.beta);
  const Assignment alpha = debool(ctx.enc, beta);
  Solution sol;
  sol.verdict = Verdict::kYes;
  sol.bound = ctx.k;
  sol.witness.assign(alpha.begin(), alpha.begin() + ctx.sp.num_original_vars);
  attach_violations(inst, sol);
  if (!verify_solution(inst, sol)) {
    throw Error(ErrorKind::kInternal, "relaxation produced an uncertified solution");
  }
  return sol;
}

inline void set_cover(CoverAnnotation& ann, int level, const CoverOutput& c) {
  ann.levels[level].s_raw = c.s;
  ann.levels[level].f_raw = c.f;
  ann.levels[level].seed = c.seed;
}

/// SolveMinLin over Z_{p^d} for simple or special input.
inline Solution solve_prime_power(const Instance& inst, int k, const SolveOptions& opt = {}) {
  if (!is_simple(inst)) {
    throw Error(ErrorKind::kNotSimple, "instance is not simple over a prime power");
  }
  Solution no;
  no.bound = k;
  no.mode = mode_name(opt.mode);
  no.seeds = {opt.seed};
  PrimePowerContext ctx(inst, k);
  const PrimePower& pp = ctx.sp.pp;
  if (opt.relax_check && !solve_minsat(ctx.enc.inst, k).yes) return no;
  const int L = ctx.levels();
  const int n = ctx.sp.inst.num_vars();
  std::vector<std::vector<Int>> level_units(L);
  for (int i = 0; i < L; ++i) level_units[i] = units(PrimePower{pp.p, pp.d - i});

  if (opt.mode == Mode::kRandomized) {
    for (int t = 0; t < opt.trials; ++t) {
      const std::uint64_t ts = Rng::split(opt.seed, static_cast<std::uint64_t>(t));
      CoverAnnotation ann;
      ann.levels.resize(L);
      for (int i = 0; i < L; ++i) {
        Rng rng(Rng::split(ts, static_cast<std::uint64_t>(i)));
        set_cover(ann, i, random_cover(ctx.fams[i], rng));
      }
      derive_cover_sets(ctx.aux, ann);
      Rng urng(Rng::split(ts, static_cast<std::uint64_t>(L)));
      for (int i = 0; i < L; ++i) {
        for (int v = 0; v < n; ++v) {
          if (ann.levels[i].t[v]) {
            ann.levels[i].unit[v] = level_units[i][urng.below(level_units[i].size())];
          }
        }
      }
      if (auto sol = finish_trial(inst, ctx, ann)) {
        sol->mode = no.mode;
        sol->seeds = {opt.seed, ts};
        sol->trials_used = t + 1;
        return *sol;
      }
      no.trials_used = t + 1;
    }
    return no;
  }

  // Derandomized: every combination of per-level covers, then every member
  // of the per-level unit function families.
  std::vector<std::vector<CoverOutput>> lists(L);
  for (int i = 0; i < L; ++i) lists[i] = derandomized_covers(ctx.fams[i], opt.budget);
  std::vector<std::size_t> pick(L, 0);
  for (;;) {
    CoverAnnotation ann;
    ann.levels.resize(L);
    for (int i = 0; i < L; ++i) set_cover(ann, i, lists[i][pick[i]]);
    derive_cover_sets(ctx.aux, ann);
    std::vector<std::vector<int>> members(L);
    std::vector<std::vector<std::vector<int>>> funcs(L);
    for (int i = 0; i < L; ++i) {
      for (int v = 0; v < n; ++v) {
        if (ann.levels[i].t[v]) members[i].push_back(v);
      }
      const int t_size = static_cast<int>(members[i].size());
      const int kappa = std::min(t_size, 4 * k * (pp.d - i - 1));
      funcs[i] = function_family(t_size, kappa, static_cast<int>(level_units[i].size()), opt.budget);
    }
    std::vector<std::size_t> fpick(L, 0);
    for (;;) {
      for (int i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < members[i].size(); ++j) {
          ann.levels[i].unit[members[i][j]] = level_units[i][funcs[i][fpick[i]][j]];
        }
      }
      ++no.trials_used;
      if (auto sol = finish_trial(inst, ctx, ann)) {
        sol->mode = no.mode;
        sol->seeds = no.seeds;
        sol->trials_used = no.trials_used;
        return *sol;
      }
      int i = 0;
      while (i < L && ++fpick[i] == funcs[i].size()) fpick[i++] = 0;
      if (i == L) break;
    }
    int i = 0;
    while (i < L && ++pick[i] == lists[i].size()) pick[i++] = 0;
    if (i == L) break;
  }
  return no;
}

// ---------------------------------------------------------------------------
// Composite moduli.

/// The instance reduced modulo one prime-power factor.
inline Instance project(const Instance& inst, const PrimePower& f) {
  Instance out;
  out.ring = factorize(f.q());
  out.vars = inst.vars;
  out.k = inst.k;
  for (const auto& e : inst.eqs) {
    Equation p = e;
    p.a = crt_project(e.a, f);
    p.b = crt_project(e.b, f);
    p.c = crt_project(e.c, f);
    out.eqs.push_back(p);
  }
  return out;
}

/// Decides one factor, using the relaxation engine when the projection is
/// simple and the requested mode is one of its modes.
inline Solution solve_factor(const Instance& inst, int k, const SolveOptions& opt) {
  if ((opt.mode == Mode::kRandomized || opt.mode == Mode::kDerandomized) && is_simple(inst)) {
    return solve_prime_power(inst, k, opt);
  }
  return solve_exact_fallback(inst, k);
}

/// Per-factor minimum parameter up to k, union of deletion sets, CRT witness.
/// Yes certifies |Z| <= omega(m) * k; No certifies OPT > k when the factor
/// solver is exact.
inline Solution solve_general(const Instance& inst, int k, const SolveOptions& opt = {}) {
  const RingSpec& ring = inst.ring;
  const int w = ring.omega();
  Solution sol;
  sol.bound = w * k;
  sol.mode = mode_name(Mode::kApprox);
  sol.seeds = {opt.seed};
  std::set<int> del;
  std::vector<Assignment> parts;
  for (const auto& f : ring.factors) {
    const Instance pi = project(inst, f);
    std::optional<Solution> got;
    for (int kk = 0; kk <= k && !got; ++kk) {
      Solution s = solve_factor(pi, kk, opt);
      sol.trials_used += s.trials_used;
      if (s.yes()) got = std::move(s);
    }
    if (!got) {
      sol.verdict = Verdict::kNo;
      return sol;
    }
    del.insert(got->deleted.begin(), got->deleted.end());
    parts.push_back(got->witness);
  }
  sol.verdict = Verdict::kYes;
  sol.witness.assign(inst.num_vars(), 0);
  for (int v = 0; v < inst.num_vars(); ++v) {
    std::vector<Int> residues;
    for (const auto& p : parts) residues.push_back(p[v]);
    sol.witness[v] = crt_lift(ring, residues);
  }
  sol.deleted.assign(del.begin(), del.end());
  if (!verify_solution(inst, sol)) {
    throw Error(ErrorKind::kInternal, "recombined solution failed verification");
  }
  return sol;
}

/// Dispatch on the requested mode.
inline Solution solve(const Instance& inst, int k, const SolveOptions& opt = {}) {
  switch (opt.mode) {
    case Mode::kFallback:
      return solve_exact_fallback(inst, k);
    case Mode::kApprox:
      return solve_general(inst, k, opt);
    default:
      if (!inst.ring.is_prime_power()) return solve_general(inst, k, opt);
      return solve_prime_power(inst, k, opt);
  }
}

}  // namespace minlin
