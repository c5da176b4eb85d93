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

// Balanced subgraph covers: the randomized sampling procedure over important
// connected subsets, and its derandomization through cover-free families.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minlin/biased_graph.hpp"
#include "minlin/error.hpp"
#include "minlin/rng.hpp"

namespace minlin {

struct CoverOutput {
  VertexSet s;
  EdgeSet f;
  std::vector<int> chosen;  // indices into CoverFamily::sets
  std::uint64_t seed = 0;
};

/// The k-dependent data of a graph that every sampling round reuses.
struct CoverFamily {
  int k = 0;
  int n = 0;
  std::vector<ImportantSubset> sets;
  std::vector<VertexSet> nbrs;
  std::vector<EdgeSet> bnds;
  VertexSet balanced_part;
};

inline std::int64_t pow4(int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 4;
  return r;
}

inline CoverFamily prepare_cover(const GroupLabelledGraph& g, int k) {
  CoverFamily fam;
  fam.k = k;
  fam.n = g.num_vertices();
  fam.sets = important_family(g, k);
  for (int v = 0; v < fam.n; ++v) {
    std::int64_t count = 0;
    for (const auto& x : fam.sets) count += x.x.test(v) ? 1 : 0;
    if (k < 31 && count > pow4(k)) {
      throw Error(ErrorKind::kInternal, "important family of vertex " + std::to_string(v) +
                                            " has " + std::to_string(count) + " > 4^k members");
    }
  }
  for (const auto& x : fam.sets) {
    fam.nbrs.push_back(neighbourhood(g, x.x));
    fam.bnds.push_back(boundary(g, x.x));
  }
  fam.balanced_part = VertexSet(fam.n);
  const std::vector<char> none;
  for (const auto& comp : components(g)) {
    if (check_balanced(g, comp, none).balanced) fam.balanced_part |= comp;
  }
  return fam;
}

/// Steps 3 to 5 of the sampling procedure for a fixed sampled subfamily.
inline CoverOutput cover_from_sample(const CoverFamily& fam, const std::vector<char>& sampled) {
  CoverOutput out;
  VertexSet u(fam.n);
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    if (sampled[i]) u |= fam.sets[i].x;
  }
  out.s = VertexSet(fam.n);
  std::set<int> f;
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    if (!fam.sets[i].x.subset_of(u) || fam.nbrs[i].intersects(u)) continue;
    out.chosen.push_back(static_cast<int>(i));
    out.s |= fam.sets[i].x;
    f.insert(fam.sets[i].cleaning.begin(), fam.sets[i].cleaning.end());
    f.insert(fam.bnds[i].begin(), fam.bnds[i].end());
  }
  out.s |= fam.balanced_part;
  out.f.assign(f.begin(), f.end());
  return out;
}

/// True with probability exactly 4^-k.
inline bool sample_quarter_power(Rng& rng, int k) {
  int bits = 2 * k;
  while (bits > 0) {
    const int take = std::min(bits, 64);
    const std::uint64_t x = rng.next();
    if (take == 64 ? x != 0 : (x >> (64 - take)) != 0) return false;
    bits -= take;
  }
  return true;
}

inline CoverOutput random_cover(const CoverFamily& fam, Rng& rng) {
  std::vector<char> sampled(fam.sets.size(), 0);
  for (auto& s : sampled) s = sample_quarter_power(rng, fam.k) ? 1 : 0;
  auto out = cover_from_sample(fam, sampled);
  out.seed = rng.seed();
  return out;
}

inline CoverOutput random_cover(const GroupLabelledGraph& g, int k, std::uint64_t seed) {
  Rng rng(seed);
  return random_cover(prepare_cover(g, k), rng);
}

/// delta(S) is inside F and (G - F)[S] is balanced.
inline bool cover_invariants_hold(const GroupLabelledGraph& g, const CoverOutput& c) {
  const auto mask = edge_mask(g, c.f);
  for (int e : boundary(g, c.s)) {
    if (!mask[e]) return false;
  }
  return check_balanced(g, c.s, mask).balanced;
}

// ---------------------------------------------------------------------------
// Cover-free families.

struct CffFamily {
  int n = 0;
  int r = 0;
  int s = 0;
  std::vector<std::vector<char>> members;
};

namespace detail {

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Calls fn(subset) for every subset of `pool` of the given size.
template <typename Fn>
bool for_each_subset(const std::vector<int>& pool, int size, Fn&& fn) {
  const int n = static_cast<int>(pool.size());
  if (size > n) return true;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  std::vector<int> cur(size);
  for (;;) {
    for (int i = 0; i < size; ++i) cur[i] = pool[idx[i]];
    if (!fn(cur)) return false;
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Visits every requirement (A, B). When n >= r + s exact sizes suffice,
/// since smaller pairs pad to exact ones; otherwise B is as large as fits.
template <typename Fn>
bool for_each_requirement(int n, int r, int s, Fn&& fn) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  const bool exact = n >= r + s;
  for (int a_size = exact ? r : 0; a_size <= std::min(r, n); ++a_size) {
    const bool ok = for_each_subset(all, a_size, [&](const std::vector<int>& a) {
      std::vector<char> in_a(n, 0);
      for (int x : a) in_a[x] = 1;
      std::vector<int> rest;
      for (int x = 0; x < n; ++x) {
        if (!in_a[x]) rest.push_back(x);
      }
      const int b_size = std::min(s, static_cast<int>(rest.size()));
      return for_each_subset(rest, b_size, [&](const std::vector<int>& b) { return fn(a, b); });
    });
    if (!ok) return false;
  }
  return true;
}

inline double requirement_count(int n, int r, int s) {
  if (n >= r + s) return binom(n, r) * binom(n - r, s);
  double total = 0;
  for (int a = 0; a <= std::min(r, n); ++a) total += binom(n, a) * binom(n - a, std::min(s, n - a));
  return total;
}

inline bool member_serves(const std::vector<char>& m, const std::vector<int>& a,
                          const std::vector<int>& b) {
  for (int x : a) {
    if (!m[x]) return false;
  }
  for (int x : b) {
    if (m[x]) return false;
  }
  return true;
}

}  // namespace detail

inline bool verify_cff(const CffFamily& fam) {
  return detail::for_each_requirement(fam.n, fam.r, fam.s, [&](const auto& a, const auto& b) {
    for (const auto& m : fam.members) {
      if (detail::member_serves(m, a, b)) return true;
    }
    return false;
  });
}

/// (n, (r, s)) cover-free family. Greedy set cover over a pseudorandom
/// candidate pool, patched with A itself for leftover requirements, then
/// verified exhaustively. When the requirement space exceeds the budget the
/// family of all sets of size <= r is used (member A serves every (A, B)).
inline CffFamily build_cff(int n, int r, int s, double budget = 2e5, std::uint64_t seed = 1) {
  CffFamily fam{n, r, s, {}};
  if (s == 0 || n == 0) {
    fam.members.push_back(std::vector<char>(n, 1));
    return fam;
  }
  const double reqs = detail::requirement_count(n, r, s);
  double small_sets = 0;
  for (int a = 0; a <= std::min(r, n); ++a) small_sets += detail::binom(n, a);
  if (n <= r + s || reqs > budget) {
    if (small_sets > budget) {
      throw Error(ErrorKind::kCffBudgetExceeded,
                  "(n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                      ", s=" + std::to_string(s) + ")");
    }
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int a = 0; a <= std::min(r, n); ++a) {
      detail::for_each_subset(all, a, [&](const std::vector<int>& sub) {
        std::vector<char> m(n, 0);
        for (int x : sub) m[x] = 1;
        fam.members.push_back(std::move(m));
        return true;
      });
    }
    if (reqs <= budget && !verify_cff(fam)) throw Error(ErrorKind::kInternal, "cff verification failed");
    return fam;
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> open;
  detail::for_each_requirement(n, r, s, [&](const auto& a, const auto& b) {
    open.emplace_back(a, b);
    return true;
  });
  Rng rng(seed);
  const int pool_size = 32;
  const std::uint64_t denom = static_cast<std::uint64_t>(r + s);
  while (!open.empty()) {
    std::vector<char> best;
    std::size_t best_hits = 0;
    for (int t = 0; t < pool_size; ++t) {
      std::vector<char> cand(n, 0);
      for (int x = 0; x < n; ++x) cand[x] = rng.below(denom) < static_cast<std::uint64_t>(r) ? 1 : 0;
      std::size_t hits = 0;
      for (const auto& req : open) hits += detail::member_serves(cand, req.first, req.second);
      if (hits > best_hits) {
        best_hits = hits;
        best = std::move(cand);
      }
    }
    if (best_hits == 0) {
      best.assign(n, 0);
      for (int x : open.front().first) best[x] = 1;
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> still;
    for (auto& req : open) {
      if (!detail::member_serves(best, req.first, req.second)) still.push_back(std::move(req));
    }
    open = std::move(still);
    fam.members.push_back(std::move(best));
  }
  if (!verify_cff(fam)) throw Error(ErrorKind::kInternal, "cff verification failed");
  return fam;
}

/// One cover per member of an (|X|, (k, k*4^k)) cover-free family, with
/// duplicate (S, F) pairs removed.
inline std::vector<CoverOutput> derandomized_covers(const CoverFamily& fam, double budget = 2e5) {
  const int n = static_cast<int>(fam.sets.size());
  const int s = static_cast<int>(std::min<std::int64_t>(fam.k * pow4(fam.k), 1 << 20));
  const CffFamily cff = build_cff(n, fam.k, s, budget);
  std::vector<CoverOutput> out;
  std::set<std::pair<VertexSet, EdgeSet>> seen;
  for (const auto& m : cff.members) {
    auto c = cover_from_sample(fam, m);
    if (seen.insert({c.s, c.f}).second) out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<CoverOutput> derandomized_covers(const GroupLabelledGraph& g, int k,
                                                    double budget = 2e5) {
  return derandomized_covers(prepare_cover(g, k), budget);
}

/// Maps [n] -> [0, domain) such that every partial map on kappa points is
/// extended by some member. Greedy over random maps, patched and verified.
inline std::vector<std::vector<int>> function_family(int n, int kappa, int domain,
                                                     double budget = 2e5, std::uint64_t seed = 7) {
  if (kappa > n) kappa = n;
  std::vector<std::vector<int>> out;
  if (n == 0 || domain <= 0) {
    out.push_back(std::vector<int>(n, 0));
    return out;
  }
  const double total_maps = std::pow(static_cast<double>(domain), n);
  if (kappa <= 1 && n > 1) {
    for (int c = 0; c < (kappa == 0 ? 1 : domain); ++c) out.push_back(std::vector<int>(n, c));
    return out;
  }
  if (kappa == n) {
    if (total_maps > budget) {
      throw Error(ErrorKind::kCffBudgetExceeded, "function family over " + std::to_string(n) +
                                                     " points exceeds budget");
    }
    std::vector<int> f(n, 0);
    for (;;) {
      out.push_back(f);
      int i = 0;
      while (i < n && ++f[i] == domain) f[i++] = 0;
      if (i == n) break;
    }
    return out;
  }
  const double reqs = detail::binom(n, kappa) * std::pow(static_cast<double>(domain), kappa);
  if (reqs > budget) {
    throw Error(ErrorKind::kCffBudgetExceeded, "function family requirements exceed budget");
  }
  struct Req {
    std::vector<int> pts;
    std::vector<int> vals;
  };
  std::vector<Req> open;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  detail::for_each_subset(all, kappa, [&](const std::vector<int>& pts) {
    std::vector<int> vals(kappa, 0);
    for (;;) {
      open.push_back({pts, vals});
      int i = 0;
      while (i < kappa && ++vals[i] == domain) vals[i++] = 0;
      if (i == kappa) break;
    }
    return true;
  });
  auto agrees = [](const std::vector<int>& f, const Req& r) {
    for (std::size_t i = 0; i < r.pts.size(); ++i) {
      if (f[r.pts[i]] != r.vals[i]) return false;
    }
    return true;
  };
  Rng rng(seed);
  while (!open.empty()) {
    std::vector<int> best;
    std::size_t best_hits = 0;
    for (int t = 0; t < 32; ++t) {
      std::vector<int> f(n);
      for (auto& x : f) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(domain)));
      std::size_t hits = 0;
      for (const auto& r : open) hits += agrees(f, r);
      if (hits > best_hits) {
        best_hits = hits;
        best = std::move(f);
      }
    }
    if (best_hits == 0) {
      best.assign(n, 0);
      for (std::size_t i = 0; i < open.front().pts.size(); ++i) {
        best[open.front().pts[i]] = open.front().vals[i];
      }
    }
    std::vector<Req> still;
    for (auto& r : open) {
      if (!agrees(best, r)) still.push_back(std::move(r));
    }
    open = std::move(still);
    out.push_back(std::move(best));
  }
  return out;
}

/// Exhaustive check of the function-family property.
inline bool verify_function_family(const std::vector<std::vector<int>>& fam, int n, int kappa,
                                   int domain) {
  if (kappa > n) kappa = n;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return detail::for_each_subset(all, kappa, [&](const std::vector<int>& pts) {
    std::vector<int> vals(kappa, 0);
    for (;;) {
      bool hit = false;
      for (const auto& f : fam) {
        bool ok = true;
        for (int i = 0; i < kappa && ok; ++i) ok = f[pts[i]] == vals[i];
        if (ok) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
      int i = 0;
      while (i < kappa && ++vals[i] == domain) vals[i++] = 0;
      if (i == kappa) break;
    }
    return true;
  });
}

}  // namespace minlin
