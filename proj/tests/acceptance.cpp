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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass --only N to run a single criterion.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "minlin.hpp"
#include "support.hpp"

using namespace minlin;
using minlin::testing::random_graph;
using minlin::testing::random_unit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every Yes produced anywhere in the run, checked again at criterion 2.
int g_yes_seen = 0;
int g_yes_bad = 0;

void record_yes(const Instance& inst, const Solution& sol) {
  if (!sol.yes()) return;
  ++g_yes_seen;
  if (!verify_solution(inst, sol)) ++g_yes_bad;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// 1. Randomized solver and exact fallback agree with the oracle.
Outcome criterion_oracle_equivalence() {
  constexpr int kPerRing = 300;
  constexpr double kTimeLimit = 300.0;
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  int rand_bad = 0, fallback_bad = 0, yes_cases = 0;
  std::ostringstream first;
  for (Int m : {4, 8, 9}) {
    for (int i = 0; i < kPerRing; ++i) {
      const std::uint64_t seed = Rng::split(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(i));
      Rng rng(seed);
      const Profile prof = rng.coin() ? Profile::kSpecial : Profile::kSimple;
      const int n = 3 + static_cast<int>(rng.below(4));
      const int eqs = 4 + static_cast<int>(rng.below(9));
      const int planted = static_cast<int>(rng.below(4));
      const int k = static_cast<int>(rng.below(4));
      const Instance inst = gen_random(prof, m, n, eqs, planted, seed);
      const int opt = brute_force_opt(inst).opt;
      const bool truth = opt <= k;
      yes_cases += truth;
      SolveOptions opt_rand;
      opt_rand.seed = seed;
      const Solution r = solve_prime_power(inst, k, opt_rand);
      const Solution f = solve_exact_fallback(inst, k);
      record_yes(inst, r);
      record_yes(inst, f);
      if (r.yes() != truth) {
        if (rand_bad++ == 0) first << " first randomized mismatch: m=" << m << " i=" << i << " opt=" << opt << " k=" << k;
      }
      if (f.yes() != truth) {
        if (fallback_bad++ == 0) first << " first fallback mismatch: m=" << m << " i=" << i;
      }
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << 3 * kPerRing << " instances (" << yes_cases << " yes), randomized mismatches " << rand_bad
    << ", fallback mismatches " << fallback_bad << ", " << secs << "s" << first.str();
  out.pass = rand_bad == 0 && fallback_bad == 0 && secs < kTimeLimit;
  out.detail = d.str();
  return out;
}

// 2. Every Yes is certified; eq1-z4 at k = 0 never yields Yes.
Outcome criterion_soundness() {
  constexpr int kRuns = 10000;
  const Instance eq1 = gen_fixture("eq1-z4");
  int yes = 0;
  for (int s = 0; s < kRuns; ++s) {
    SolveOptions opt;
    opt.seed = Rng::split(0xe91, static_cast<std::uint64_t>(s));
    const Solution sol = solve_prime_power(eq1, 0, opt);
    record_yes(eq1, sol);
    yes += sol.yes();
  }
  // Adversarial seeds on planted no-instances: k one below the optimum.
  int adv_runs = 0;
  for (Int m : {4, 8, 9}) {
    for (int i = 0; i < 40; ++i) {
      const Instance inst = gen_random(Profile::kSpecial, m, 5, 10, 3, 77 + static_cast<std::uint64_t>(i));
      const int opt = brute_force_opt(inst).opt;
      if (opt == 0 || opt == kInfiniteCost) continue;
      for (std::uint64_t s : {0ULL, 1ULL, ~0ULL, 0x8000000000000000ULL}) {
        SolveOptions o;
        o.seed = s;
        o.trials = 32;
        const Solution sol = solve_prime_power(inst, opt - 1, o);
        record_yes(inst, sol);
        ++adv_runs;
        if (sol.yes()) ++yes;
      }
    }
  }
  Outcome out;
  out.pass = yes == 0 && g_yes_bad == 0;
  std::ostringstream d;
  d << kRuns << " runs on eq1-z4 at k=0 and " << adv_runs << " adversarial runs: " << yes
    << " Yes; " << g_yes_seen << " Yes verdicts checked so far, " << g_yes_bad << " failed verification";
  out.detail = d.str();
  return out;
}

// 3. Fixture optima.
Outcome criterion_fixtures() {
  Outcome out;
  std::ostringstream d;
  auto check = [&](const std::string& name, int expect, bool at_least) {
    const Instance inst = gen_fixture(name);
    const int opt = brute_force_opt(inst).opt;
    const bool oracle_ok = at_least ? opt >= expect && opt != kInfiniteCost : opt == expect;
    // Exact solvers: No at opt-1, Yes at opt.
    bool exact_ok = true;
    for (int k : {opt - 1, opt}) {
      if (k < 0) continue;
      const Solution f = solve_exact_fallback(inst, k);
      SolveOptions dr;
      dr.mode = Mode::kDerandomized;
      const Solution g = solve_prime_power(inst, k, dr);
      record_yes(inst, f);
      record_yes(inst, g);
      exact_ok = exact_ok && f.yes() == (k >= opt) && g.yes() == (k >= opt);
    }
    d << name << " opt=" << opt << (oracle_ok && exact_ok ? "" : " (mismatch)") << "; ";
    out.pass = out.pass && oracle_ok && exact_ok;
  };
  check("fig1-z4", 4, false);
  check("eq1-z4", 1, false);
  check("fig2-left-z8", 1, true);
  check("fig2-right-z8", 0, false);
  const SpecialInstance sp = special_form(gen_fixture("eq1-z4"));
  const MinSatResult relax = solve_minsat(encode(sp).inst, 0);
  const bool strict = relax.yes && relax.cost == 0;
  d << "eq1-z4 relaxation cost " << (relax.yes ? std::to_string(relax.cost) : std::string(">0"));
  out.pass = out.pass && strict;
  out.detail = d.str();
  return out;
}

// 4. Product approximation over Z_6 and Z_12.
Outcome criterion_approximation() {
  constexpr int kInstances = 200;
  int bad = 0, yes = 0, positive = 0;
  std::ostringstream first;
  for (int i = 0; i < kInstances; ++i) {
    const Int m = i % 2 == 0 ? 6 : 12;
    const std::uint64_t seed = Rng::split(0xa9, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    const int n = 2 + static_cast<int>(rng.below(4));
    const int eqs = 3 + static_cast<int>(rng.below(6));
    const int planted = static_cast<int>(rng.below(4));
    const int k = static_cast<int>(rng.below(4));
    const Instance inst = gen_random(Profile::kGeneral, m, n, eqs, std::min(planted, eqs), seed);
    const int opt = brute_force_opt(inst).opt;
    positive += opt > 0 && opt != kInfiniteCost;
    SolveOptions o;
    o.mode = Mode::kApprox;
    const Solution sol = solve_general(inst, k, o);
    record_yes(inst, sol);
    const int w = inst.ring.omega();
    bool ok;
    if (sol.yes()) {
      ++yes;
      ok = verify_solution(inst, sol) && opt != kInfiniteCost &&
           static_cast<int>(sol.deleted.size()) <= w * opt;
    } else {
      ok = opt > k;
    }
    if (!ok && bad++ == 0) first << " first violation at i=" << i << " opt=" << opt << " k=" << k;
  }
  Outcome out;
  out.pass = bad == 0;
  std::ostringstream d;
  d << kInstances << " instances (" << yes << " yes, " << positive << " with 0 < OPT < inf), " << bad
    << " violations" << first.str();
  out.detail = d.str();
  return out;
}

// 5. Cover invariants, randomized coverage, derandomized coverage.
Outcome criterion_covering() {
  constexpr int kCalls = 2000;
  constexpr int kSeeds = 2000;
  const std::vector<Int> qs = {4, 8, 9, 27};
  int invariant_bad = 0;
  Rng rng(0xc0);
  for (int i = 0; i < kCalls; ++i) {
    const Int q = qs[i % qs.size()];
    const int n = 2 + static_cast<int>(rng.below(11));
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * n)));
    const GroupLabelledGraph g = random_graph(rng, n, m, q);
    const int k = 1 + static_cast<int>(rng.below(3));
    const CoverOutput c = random_cover(g, k, rng.next());
    if (!cover_invariants_hold(g, c)) ++invariant_bad;
  }
  int planted_total = 0, planted_missed = 0, derand_total = 0, derand_missed = 0;
  for (int t = 0; t < 24; ++t) {
    const Int q = qs[t % qs.size()];
    const int n = 6 + static_cast<int>(rng.below(7));
    const int h = 2 + static_cast<int>(rng.below(4));
    const int bad = static_cast<int>(rng.below(2));
    const int bnd = static_cast<int>(rng.below(static_cast<std::uint64_t>(3 - bad + 1)));
    const auto pg = minlin::testing::planted_graph(rng, n, h, bad, bnd, n, q);
    const int k = 3;
    ++planted_total;
    const CoverFamily fam = prepare_cover(pg.g, k);
    bool hit = false;
    for (int s = 0; s < kSeeds && !hit; ++s) {
      Rng r(Rng::split(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(s)));
      const CoverOutput c = random_cover(fam, r);
      if (!cover_invariants_hold(pg.g, c)) ++invariant_bad;
      hit = minlin::testing::covers(pg.g, c, pg.x, k);
    }
    if (!hit) ++planted_missed;
    if (pg.cost <= 2) {
      ++derand_total;
      const CoverFamily fam2 = prepare_cover(pg.g, 2);
      bool dhit = false;
      for (const auto& c : derandomized_covers(fam2)) {
        if (!cover_invariants_hold(pg.g, c)) ++invariant_bad;
        dhit = dhit || minlin::testing::covers(pg.g, c, pg.x, 2);
      }
      if (!dhit) ++derand_missed;
    }
  }
  Outcome out;
  out.pass = invariant_bad == 0 && planted_missed == 0 && derand_missed == 0;
  std::ostringstream d;
  d << kCalls << " random covers, invariant failures " << invariant_bad << "; planted graphs "
    << planted_total << " missed " << planted_missed << "; derandomized " << derand_total << " missed "
    << derand_missed;
  out.detail = d.str();
  return out;
}

// Three internally disjoint x-y paths; two balanced cycles force the third.
// Paths 1 and 2 are retuned to close a balanced cycle with path 0 half of the
// time, so every combination of balanced cycles occurs.
bool theta_closed(Rng& rng, Int q) {
  std::vector<std::vector<Int>> labels(3);
  std::vector<std::vector<char>> forward(3);
  for (int p = 0; p < 3; ++p) {
    const int len = 1 + static_cast<int>(rng.below(3));
    for (int j = 0; j < len; ++j) {
      labels[p].push_back(random_unit(rng, q));
      forward[p].push_back(rng.coin());
    }
  }
  auto product = [&](int p) {
    Int prod = 1;
    for (std::size_t j = 0; j < labels[p].size(); ++j) {
      prod = mod_reduce(prod * (forward[p][j] ? labels[p][j] : inverse_mod(labels[p][j], q)), q);
    }
    return prod;
  };
  for (int p = 1; p < 3; ++p) {
    if (!rng.coin()) continue;
    // Make the x-y product of path p equal that of path 0.
    const Int rest = mod_reduce(product(0) * inverse_mod(product(p), q), q);
    const Int last = forward[p].back() ? labels[p].back() : inverse_mod(labels[p].back(), q);
    const Int want = mod_reduce(last * rest, q);
    labels[p].back() = forward[p].back() ? want : inverse_mod(want, q);
  }
  GroupLabelledGraph g(2, q);
  std::vector<std::vector<Step>> paths(3);
  for (int p = 0; p < 3; ++p) {
    int at = 0;
    for (std::size_t j = 0; j < labels[p].size(); ++j) {
      const int next = j + 1 == labels[p].size() ? 1 : g.add_vertex();
      const int e = forward[p][j] ? g.add_edge(at, next, labels[p][j]) : g.add_edge(next, at, labels[p][j]);
      paths[p].push_back({e, at});
      at = next;
    }
  }
  auto cycle = [&](int a, int b) {
    std::vector<Step> c = paths[a];
    for (auto it = paths[b].rbegin(); it != paths[b].rend(); ++it) {
      c.push_back({it->edge, g.other(it->edge, it->from)});
    }
    return c;
  };
  const int balanced = cycle_balanced(g, cycle(0, 1)) + cycle_balanced(g, cycle(0, 2)) +
                       cycle_balanced(g, cycle(1, 2));
  return balanced != 2;
}

// 6. Structural statements.
Outcome criterion_structure() {
  Outcome out;
  std::ostringstream d;
  Rng rng(0x57);
  // |X_v| <= 4^k.
  int enum_calls = 0, enum_bad = 0;
  for (int i = 0; i < 60; ++i) {
    const Int q = std::vector<Int>{4, 8, 9, 27}[i % 4];
    const int n = 3 + static_cast<int>(rng.below(6));
    const GroupLabelledGraph g = random_graph(rng, n, static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * n))), q);
    for (int k = 0; k <= 3; ++k) {
      for (int v = 0; v < n; ++v) {
        ++enum_calls;
        if (static_cast<std::int64_t>(enumerate_important_subsets(g, v, k).size()) > pow4(k)) ++enum_bad;
      }
    }
  }
  d << "important-set calls " << enum_calls << " over bound " << enum_bad << "; ";
  // Theta closure with cycles biased towards balance.
  int theta_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Int q = std::vector<Int>{4, 8, 9, 27}[i % 4];
    Rng r(Rng::split(0x7e7a, static_cast<std::uint64_t>(i)));
    if (!theta_closed(r, q)) ++theta_bad;
  }
  d << "theta graphs 1000 violations " << theta_bad << "; ";
  // H_i(alpha, Z) balanced with cost <= 2|Z|.
  int h_checks = 0, h_bad = 0;
  for (Int m : {4, 8, 9}) {
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t seed = Rng::split(0x4a + static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(i));
      const Instance inst = gen_random(Profile::kSpecial, m, 5, 9, static_cast<int>(seed % 3), seed);
      const SpecialInstance sp = special_form(inst);
      const OracleResult orc = brute_force_opt(inst);
      if (orc.opt == kInfiniteCost) continue;
      const Assignment alpha = extend_to_special(sp, orc.best);
      std::vector<int> z;
      for (const auto& e : sp.inst.eqs) {
        if (!satisfies(e, alpha, m)) z.push_back(e.id);
      }
      for (int lvl = 0; lvl + 2 <= sp.pp.d; ++lvl) {
        const AuxGraph ag = build_aux_graph(sp, lvl);
        VertexSet hv(ag.g.num_vertices());
        for (int v = 0; v < ag.num_src; ++v) {
          const int o = ord(alpha[v], sp.pp);
          if (o <= lvl) hv.set(ag.vertex(v, o));
        }
        std::vector<char> removed(ag.g.num_edges(), 0);
        for (int id : z) {
          for (int e : ag.edges_of[id]) removed[e] = 1;
        }
        EdgeSet kept;
        for (int e : internal_edges(ag.g, hv)) {
          if (!removed[e]) kept.push_back(e);
        }
        ++h_checks;
        const bool bal = check_balanced(ag.g, hv, removed).balanced;
        if (!bal || subgraph_cost(ag.g, hv, kept) > 2 * static_cast<int>(z.size())) ++h_bad;
      }
    }
  }
  d << "H_i checks " << h_checks << " failures " << h_bad << "; ";
  // Gaifman graphs of every emitted relation.
  int rel_checks = 0, rel_bad = 0;
  for (Int m : {4, 8, 9, 27}) {
    for (int i = 0; i < 5; ++i) {
      const Instance inst = gen_random(Profile::kSpecial, m, 4, 6, 1, 0x6a1f + static_cast<std::uint64_t>(i));
      const SpecialInstance sp = special_form(inst);
      const BoolEncoding enc = encode(sp);
      for (const auto& c : enc.inst.constraints) {
        const LocalRelation r = local_relation(enc, c);
        ++rel_checks;
        try {
          if (!gaifman_2k2_check(r.arity, r.formula).two_k2_free) ++rel_bad;
        } catch (const Error&) {
          ++rel_bad;
        }
      }
    }
  }
  d << "relations " << rel_checks << " not 2K2-free " << rel_bad;
  out.pass = enum_bad == 0 && theta_bad == 0 && h_bad == 0 && rel_bad == 0;
  out.detail = d.str();
  return out;
}

// 7. MinSat against enumeration.
Outcome criterion_minsat() {
  constexpr int kInstances = 500;
  constexpr double kTimeLimit = 60.0;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(0x3a7);
  int bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    const int n = 2 + static_cast<int>(rng.below(13));
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * n)));
    BoolInstance b = minlin::testing::random_bool_instance(rng, n, m);
    const int k = static_cast<int>(rng.below(5));
    b.k = k;
    const MinSatResult fast = solve_minsat(b, k);
    const MinSatResult slow = exhaustive_minsat(b, k);
    if (fast.yes != slow.yes || (fast.yes && fast.cost != slow.cost)) ++bad;
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = bad == 0 && secs < kTimeLimit;
  std::ostringstream d;
  d << kInstances << " instances, mismatches " << bad << ", " << secs << "s";
  out.detail = d.str();
  return out;
}

// 8. Gadget optimum equals the bundle cut optimum.
Outcome criterion_gadget() {
  constexpr int kInstances = 50;
  int bad = 0, finite = 0, positive = 0;
  for (int i = 0; i < kInstances; ++i) {
    const int p = i % 2 == 0 ? 2 : 3;
    const SplitMinCutInstance smc = gen_split_instance(p, 8, 0x5e1 + static_cast<std::uint64_t>(i));
    const Instance inst = gen_split_gadget(smc, factorize(p == 2 ? 6 : 30));
    const int cut = min_bundle_cut(smc);
    const int eq = brute_force_deletion_opt(inst, static_cast<int>(smc.bundles.size()));
    finite += cut != kInfiniteCost;
    positive += cut > 0 && cut != kInfiniteCost;
    if (cut != eq) ++bad;
  }
  Outcome out;
  out.pass = bad == 0;
  std::ostringstream d;
  d << kInstances << " instances (" << finite << " with a finite cut, " << positive << " of them nonempty), mismatches " << bad;
  out.detail = d.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);
  }
  // Criterion 2 re-checks every Yes seen before it, so it runs last.
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion_oracle_equivalence}, {3, criterion_fixtures}, {4, criterion_approximation},
      {5, criterion_covering},           {6, criterion_structure}, {7, criterion_minsat},
      {8, criterion_gadget},             {2, criterion_soundness}};
  bool all = true;
  for (const auto& [id, fn] : criteria) {
    if (only != 0 && only != id) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << " ["
              << seconds_since(start) << "s]" << std::endl;
  }
  return all ? 0 : 1;
}
