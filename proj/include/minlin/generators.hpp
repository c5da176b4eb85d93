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

// Instance generators: the worked fixtures, random planted instances, and the
// equation encoding of p-split min cut.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minlin/equations.hpp"
#include "minlin/format.hpp"
#include "minlin/ring.hpp"
#include "minlin/rng.hpp"

namespace minlin {

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"eq1-z4", "fig1-z4", "fig2-left-z8",
                                                 "fig2-right-z8"};
  return names;
}

namespace detail {

// Over Z_4 the edge 3x = y is 3*x + 3*y = 0.
inline std::string fig1_text() {
  const std::vector<std::pair<const char*, const char*>> edges = {
      {"S4", "S3"}, {"S4", "H3"}, {"S4", "H4"}, {"S4", "H5"}, {"S4", "H6"}, {"S3", "H3"},
      {"S3", "H4"}, {"S3", "H5"}, {"S3", "H6"}, {"H3", "H4"}, {"H3", "H5"}, {"H3", "H6"},
      {"H4", "H5"}, {"H4", "H6"}, {"H5", "H6"}, {"S2", "S1"}, {"S1", "S4"}, {"S3", "S2"},
      {"S1", "P5"}, {"P5", "P4"}, {"P4", "P3"}, {"P3", "S1"}, {"S2", "P3"}};
  std::string t =
      "mod 4\nparam 4\nvar s w S1 S2 P3 P4 P5 S3 S4 H3 H4 H5 H6\n! 1*s = 1\n! 2*s + 3*w = 0\n";
  for (const auto& [x, y] : edges) t += std::string("3*") + x + " + 3*" + y + " = 0\n";
  for (const char* b : {"S2", "P3", "P4", "P5", "H5"}) t += std::string("2*") + b + " + 3*w = 0\n";
  return t;
}

}  // namespace detail

inline Instance gen_fixture(const std::string& name) {
  if (name == "eq1-z4") {
    return parse_instance(
        "mod 4\nparam 1\nvar s v u1 u2 u3\n"
        "! 1*s = 1\n"
        "2*s + 3*v = 0\n"
        "2*u1 + 3*v = 0\n"
        "3*u1 + 3*u2 = 0\n"
        "3*u2 + 3*u3 = 0\n"
        "3*u3 + 3*u1 = 0\n");
  }
  if (name == "fig1-z4") return parse_instance(detail::fig1_text());
  const std::string fig2 =
      "mod 8\nparam 1\nvar s w u1 u2 v1 v2\n"
      "! 1*s = 1\n"
      "2*s + 7*w = 0\n"
      "2*u1 + 7*w = 0\n";
  if (name == "fig2-left-z8") {
    return parse_instance(fig2 +
                          "2*u2 + 7*w = 0\n"
                          "2*u1 + 7*v1 = 0\n"
                          "2*u2 + 7*v2 = 0\n"
                          "7*v2 + 7*v1 = 0\n"
                          "5*u2 + 7*u1 = 0\n");
  }
  if (name == "fig2-right-z8") {
    return parse_instance(fig2 +
                          "2*u1 + 7*v1 = 0\n"
                          "2*u2 + 7*v2 = 0\n"
                          "7*v2 + 7*v1 = 0\n"
                          "3*u2 + 7*u1 = 0\n");
  }
  throw Error(ErrorKind::kUnknownName, "unknown fixture " + name);
}

enum class Profile { kSpecial, kSimple, kGeneral };

inline Profile profile_from_name(const std::string& s) {
  if (s == "special") return Profile::kSpecial;
  if (s == "simple") return Profile::kSimple;
  if (s == "general") return Profile::kGeneral;
  throw Error(ErrorKind::kUnknownName, "unknown profile " + s);
}

/// Random instance with a planted assignment violating exactly `planted`
/// soft equations. About one satisfied equation in six is crisp.
///
/// For the special and simple profiles every equation is drawn from the list
/// of admissible shapes that the planted assignment satisfies (or violates);
/// the assignment is redrawn until both lists are usable.
inline Instance gen_random(Profile profile, Int m, int n_vars, int n_eqs, int planted,
                           std::uint64_t seed) {
  if (planted < 0 || planted > n_eqs || n_vars < 1 || n_eqs < 0) {
    throw Error(ErrorKind::kInfeasibleProfile, "planted count out of range");
  }
  Instance inst;
  inst.ring = factorize(m);
  inst.k = planted;
  const bool special = profile == Profile::kSpecial;
  if (profile != Profile::kGeneral && !inst.ring.is_prime_power()) {
    throw Error(ErrorKind::kInfeasibleProfile, "special and simple profiles need a prime power");
  }
  if (profile != Profile::kGeneral && n_vars < 2) {
    throw Error(ErrorKind::kInfeasibleProfile, "profile needs two variables");
  }
  Rng rng(seed);
  for (int v = 0; v < n_vars; ++v) inst.add_var(special && v == 0 ? "s" : "x" + std::to_string(v));
  std::vector<int> bad(n_eqs, 0);
  for (int i = 0; i < planted; ++i) bad[i] = 1;
  for (int i = n_eqs - 1; i > 0; --i) std::swap(bad[i], bad[rng.below(static_cast<std::uint64_t>(i + 1))]);
  auto uniform = [&](Int bound) { return static_cast<Int>(rng.below(static_cast<std::uint64_t>(bound))); };
  Assignment alpha(n_vars);

  if (profile == Profile::kGeneral) {
    for (auto& x : alpha) x = uniform(m);
    for (int i = 0; i < n_eqs; ++i) {
      const int u = static_cast<int>(uniform(n_vars));
      int v = n_vars > 1 && rng.below(6) != 0 ? static_cast<int>(uniform(n_vars - 1)) : -1;
      if (v >= u) ++v;
      const Int a = uniform(m);
      const Int b = v >= 0 ? uniform(m) : 0;
      Int lhs = mod_reduce(a * alpha[u], m);
      if (v >= 0) lhs = mod_reduce(lhs + b * alpha[v], m);
      const Int c = bad[i] ? mod_reduce(lhs + 1 + uniform(m - 1), m) : lhs;
      const bool crisp = !bad[i] && rng.below(6) == 0;
      if (v >= 0) {
        inst.add_binary(a, u, b, v, c, crisp);
      } else {
        inst.add_unary(a, u, c, crisp);
      }
    }
    return inst;
  }

  const PrimePower pp = inst.ring.factors[0];
  const std::vector<Int> us = units(pp);
  // Orders are drawn first so that equal and adjacent orders are common.
  auto draw_value = [&] {
    const int o = static_cast<int>(uniform(pp.d + 1));
    return o == pp.d ? Int{0} : mod_reduce(us[uniform(static_cast<Int>(us.size()))] * pp.pow(o), m);
  };
  // Candidate (a, u, b, v, c); v < 0 marks a crisp unary.
  using Cand = std::array<Int, 5>;
  std::vector<Cand> sat, unsat;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 200) throw Error(ErrorKind::kInfeasibleProfile, "no assignment admits the requested equations");
    for (auto& x : alpha) x = draw_value();
    if (special) alpha[0] = 1;
    sat.clear();
    unsat.clear();
    for (int u = 0; u < n_vars; ++u) {
      for (int v = 0; v < n_vars; ++v) {
        if (u == v) continue;
        if (special) {
          if (v == 0) continue;
          std::vector<Int> coeffs = us;
          if (pp.d > 1) coeffs.push_back(pp.p);
          for (Int r : coeffs) {
            const Cand c{r, u, m - 1, v, 0};
            (mod_reduce(r * alpha[u] - alpha[v], m) == 0 ? sat : unsat).push_back(c);
          }
        } else {
          for (Int a = 0; a < m; ++a) {
            for (Int b : us) {
              const Cand c{a, u, b, v, 0};
              (mod_reduce(a * alpha[u] + b * alpha[v], m) == 0 ? sat : unsat).push_back(c);
            }
          }
        }
      }
      if (!special) {
        for (Int a : us) sat.push_back({a, u, 0, -1, mod_reduce(a * alpha[u], m)});
      }
    }
    if ((planted < n_eqs && sat.empty()) || (planted > 0 && unsat.empty())) continue;
    break;
  }
  if (special) inst.add_unary(1, 0, 1, true);
  for (int i = 0; i < n_eqs; ++i) {
    const auto& list = bad[i] ? unsat : sat;
    const Cand& c = list[rng.below(list.size())];
    if (c[3] < 0) {
      inst.add_unary(c[0], static_cast<int>(c[1]), c[4], true);
      continue;
    }
    const bool crisp = !bad[i] && rng.below(6) == 0;
    inst.add_binary(c[0], static_cast<int>(c[1]), c[2], static_cast<int>(c[3]), c[4], crisp);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// p-split min cut.

/// Vertex 0 is s, vertex 1 is t; every other vertex belongs to one of the p
/// parts. Edges outside every bundle are undeletable.
struct SplitMinCutInstance {
  int p = 2;
  int n = 2;
  std::vector<int> part;  // per vertex, -1 for s and t
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> bundles;  // edge ids
  int k = 0;
};

/// Random instance: parts are paths or small trees hanging between s and t,
/// bundles take one internal edge from every part (or a single edge).
inline SplitMinCutInstance gen_split_instance(int p, int max_edges, std::uint64_t seed) {
  Rng rng(seed);
  SplitMinCutInstance smc;
  smc.p = p;
  smc.part = {-1, -1};
  std::vector<std::vector<int>> internal(p);
  for (int i = 0; i < p; ++i) {
    const int size = 1 + static_cast<int>(rng.below(3));
    const int first = smc.n;
    for (int j = 0; j < size; ++j) {
      smc.part.push_back(i);
      ++smc.n;
    }
    if (static_cast<int>(smc.edges.size()) + size + 1 > max_edges) break;
    smc.edges.push_back({0, first});
    for (int j = 1; j < size; ++j) {
      const int prev = first + static_cast<int>(rng.below(static_cast<std::uint64_t>(j)));
      internal[i].push_back(static_cast<int>(smc.edges.size()));
      smc.edges.push_back({prev, first + j});
    }
    const int last = first + static_cast<int>(rng.below(static_cast<std::uint64_t>(size)));
    internal[i].push_back(static_cast<int>(smc.edges.size()));
    smc.edges.push_back({last, 1});
  }
  // Bundles: repeatedly take one unused internal edge from each part.
  for (;;) {
    std::vector<int> b;
    for (int i = 0; i < p; ++i) {
      if (internal[i].empty()) continue;
      const std::size_t at = rng.below(internal[i].size());
      b.push_back(internal[i][at]);
      internal[i].erase(internal[i].begin() + static_cast<long>(at));
    }
    if (b.empty()) break;
    if (static_cast<int>(b.size()) != p) {
      for (int e : b) smc.bundles.push_back({e});
      continue;
    }
    if (rng.below(4) == 0) {
      for (int e : b) smc.bundles.push_back({e});
    } else {
      smc.bundles.push_back(b);
    }
    if (rng.below(5) == 0) break;
  }
  smc.k = static_cast<int>(smc.bundles.size());
  return smc;
}

/// Minimum number of bundles whose removal separates s from t, or
/// kInfiniteCost.
inline int min_bundle_cut(const SplitMinCutInstance& smc) {
  const int nb = static_cast<int>(smc.bundles.size());
  int best = kInfiniteCost;
  for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    std::vector<char> cut(smc.edges.size(), 0);
    for (int b = 0; b < nb; ++b) {
      if (mask >> b & 1) {
        for (int e : smc.bundles[b]) cut[e] = 1;
      }
    }
    std::vector<char> seen(smc.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < smc.edges.size(); ++e) {
        if (cut[e]) continue;
        const auto [a, c] = smc.edges[e];
        const int y = a == x ? c : c == x ? a : -1;
        if (y >= 0 && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    if (!seen[1]) best = size;
  }
  return best;
}

/// Equation encoding over a ring whose factors give the p orthogonal
/// idempotents q_i.
inline Instance gen_split_gadget(const SplitMinCutInstance& smc, const RingSpec& ring) {
  if (ring.omega() != smc.p) {
    throw Error(ErrorKind::kOmegaMismatch, "ring has " + std::to_string(ring.omega()) +
                                               " prime factors, instance has " +
                                               std::to_string(smc.p) + " parts");
  }
  const std::vector<Int> q = orthogonal_idempotents(ring);
  const Int m = ring.m;
  Instance inst;
  inst.ring = ring;
  inst.k = smc.k;
  std::vector<int> var(smc.n, -1);
  for (int v = 2; v < smc.n; ++v) var[v] = inst.add_var("g" + std::to_string(v));
  std::vector<int> sv(smc.p), tv(smc.p);
  for (int i = 0; i < smc.p; ++i) sv[i] = inst.add_var("s" + std::to_string(i + 1));
  for (int i = 0; i < smc.p; ++i) tv[i] = inst.add_var("t" + std::to_string(i + 1));
  for (int i = 0; i < smc.p; ++i) {
    inst.add_unary(1, sv[i], q[i], true);
    inst.add_unary(1, tv[i], 0, true);
  }
  std::vector<int> bundle_of(smc.edges.size(), -1);
  for (std::size_t b = 0; b < smc.bundles.size(); ++b) {
    for (int e : smc.bundles[b]) bundle_of[e] = static_cast<int>(b);
  }
  auto endpoint = [&](int x, int other) {
    if (x == 0) return sv[smc.part[other]];
    if (x == 1) return tv[smc.part[other]];
    return var[x];
  };
  for (std::size_t e = 0; e < smc.edges.size(); ++e) {
    const auto [a, b] = smc.edges[e];
    if (bundle_of[e] >= 0) continue;
    inst.add_binary(1, endpoint(a, b), m - 1, endpoint(b, a), 0, true);
  }
  for (std::size_t b = 0; b < smc.bundles.size(); ++b) {
    const auto& bundle = smc.bundles[b];
    if (bundle.size() == 1) {
      const auto [x, y] = smc.edges[bundle[0]];
      inst.add_binary(1, endpoint(x, y), m - 1, endpoint(y, x), 0, false);
      continue;
    }
    const int xb = inst.add_var("x" + std::to_string(b));
    const int yb = inst.add_var("y" + std::to_string(b));
    inst.add_binary(1, xb, m - 1, yb, 0, false);
    for (int e : bundle) {
      const auto [u, v] = smc.edges[e];
      const int i = smc.part[u >= 2 ? u : v];
      const Int qi = q[i];
      inst.add_binary(qi, endpoint(u, v), m - qi, xb, 0, true);
      inst.add_binary(qi, yb, m - qi, endpoint(v, u), 0, true);
    }
  }
  return inst;
}

}  // namespace minlin
