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

// Arithmetic in Z_m and Z_{p^d}: factorization, CRT, units, base-p orders
// and suffixes, and the proper cosets S(s, l, i) used by the Boolean
// relaxation.
//
// Moduli are desk-scale (m <= 10^6), so every product of two residues fits
// in a 64-bit integer.

#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "minlin/error.hpp"

namespace minlin {

using Int = std::int64_t;

inline Int mod_reduce(Int a, Int m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// A prime power p^d.
struct PrimePower {
  Int p = 2;
  int d = 1;

  Int q() const { return ipow(p, d); }
  Int pow(int e) const { return ipow(p, e); }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Modulus together with its prime factorization (primes ascending).
struct RingSpec {
  Int m = 2;
  std::vector<PrimePower> factors;

  int omega() const { return static_cast<int>(factors.size()); }
  bool is_prime_power() const { return factors.size() == 1; }
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

inline RingSpec factorize(Int m) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidModulus, "modulus must be at least 2, got " + std::to_string(m));
  }
  RingSpec spec;
  spec.m = m;
  Int rest = m;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int d = 0;
    while (rest % p == 0) {
      rest /= p;
      ++d;
    }
    spec.factors.push_back({p, d});
  }
  if (rest > 1) spec.factors.push_back({rest, 1});
  return spec;
}

inline Int crt_project(Int a, const PrimePower& factor) { return mod_reduce(a, factor.q()); }

/// Extended Euclid; returns x with a*x = gcd(a, m) (mod m).
inline Int inverse_mod(Int a, Int m) {
  Int old_r = mod_reduce(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int quot = old_r / r;
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(ErrorKind::kInternal,
                std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return mod_reduce(old_s, m);
}

/// Inverse of crt_project over all factors.
inline Int crt_lift(const RingSpec& spec, const std::vector<Int>& residues) {
  Int x = 0;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const Int q = spec.factors[i].q();
    const Int rest = spec.m / q;
    const Int coeff = mod_reduce(rest * inverse_mod(rest % q, q), spec.m);
    x = mod_reduce(x + mod_reduce(residues[i], q) * coeff, spec.m);
  }
  return x;
}

inline bool is_unit(Int a, const PrimePower& pp) {
  return mod_reduce(a, pp.q()) % pp.p != 0;
}

inline bool is_unit_mod(Int a, Int m) { return std::gcd(mod_reduce(a, m), m) == 1; }

inline std::vector<Int> units(const PrimePower& pp) {
  std::vector<Int> out;
  for (Int a = 1; a < pp.q(); ++a) {
    if (a % pp.p != 0) out.push_back(a);
  }
  return out;
}

/// Number of trailing base-p zeros; ord(0) = d.
inline int ord(Int a, const PrimePower& pp) {
  a = mod_reduce(a, pp.q());
  if (a == 0) return pp.d;
  int i = 0;
  while (a % pp.p == 0) {
    a /= pp.p;
    ++i;
  }
  return i;
}

/// The j least significant significant digits: (a / p^ord(a)) mod p^j.
inline Int sind(Int a, int j, const PrimePower& pp) {
  a = mod_reduce(a, pp.q());
  if (a == 0) throw Error(ErrorKind::kUndefinedSuffix, "suffix of 0 is undefined");
  return mod_reduce(a / pp.pow(ord(a, pp)), pp.pow(j));
}

/// Proper coset S(suffix, suffix_len, order) of Z_{p^d}: the values of order
/// exactly `order` whose `suffix_len` lowest significant digits equal `suffix`.
struct Coset {
  int order = 0;
  int suffix_len = 1;
  Int suffix = 1;

  bool is_singleton(const PrimePower& pp) const { return order + suffix_len == pp.d; }
  friend bool operator==(const Coset&, const Coset&) = default;
  friend auto operator<=>(const Coset&, const Coset&) = default;
};

inline bool coset_valid(const Coset& c, const PrimePower& pp) {
  return c.order >= 0 && c.suffix_len >= 1 && c.order + c.suffix_len <= pp.d && c.suffix > 0 &&
         c.suffix < pp.pow(c.suffix_len) && c.suffix % pp.p != 0;
}

inline void require_valid(const Coset& c, const PrimePower& pp) {
  if (!coset_valid(c, pp)) {
    throw Error(ErrorKind::kInvalidCoset,
                "(i=" + std::to_string(c.order) + ", l=" + std::to_string(c.suffix_len) +
                    ", s=" + std::to_string(c.suffix) + ") is not a proper coset of Z_" +
                    std::to_string(pp.q()));
  }
}

inline bool coset_contains(const Coset& c, Int a, const PrimePower& pp) {
  a = mod_reduce(a, pp.q());
  return a != 0 && ord(a, pp) == c.order && sind(a, c.suffix_len, pp) == c.suffix;
}

inline std::vector<Int> coset_members(const Coset& c, const PrimePower& pp) {
  require_valid(c, pp);
  const Int step = pp.pow(c.suffix_len);
  const Int free_count = pp.pow(pp.d - c.order - c.suffix_len);
  const Int shift = pp.pow(c.order);
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(free_count));
  for (Int t = 0; t < free_count; ++t) out.push_back((c.suffix + t * step) * shift);
  return out;
}

/// The singleton coset holding a nonzero value.
inline Coset singleton_coset(Int a, const PrimePower& pp) {
  const int i = ord(a, pp);
  return {i, pp.d - i, sind(a, pp.d - i, pp)};
}

enum class CosetRelation { kDisjoint, kEqual, kProperSubset, kProperSuperset };

/// Cosets form a laminar family: containment needs equal order, a longer
/// suffix on the smaller side, and agreeing low digits.
inline CosetRelation coset_relation(const Coset& a, const Coset& b, const PrimePower& pp) {
  require_valid(a, pp);
  require_valid(b, pp);
  if (a.order != b.order) return CosetRelation::kDisjoint;
  if (a.suffix_len == b.suffix_len) {
    return a.suffix == b.suffix ? CosetRelation::kEqual : CosetRelation::kDisjoint;
  }
  if (a.suffix_len > b.suffix_len) {
    return a.suffix % pp.pow(b.suffix_len) == b.suffix ? CosetRelation::kProperSubset
                                                        : CosetRelation::kDisjoint;
  }
  return b.suffix % pp.pow(a.suffix_len) == a.suffix ? CosetRelation::kProperSuperset
                                                      : CosetRelation::kDisjoint;
}

/// All proper cosets ordered by (order, suffix_len, suffix).
inline std::vector<Coset> all_cosets(const PrimePower& pp) {
  std::vector<Coset> out;
  for (int i = 0; i < pp.d; ++i) {
    for (int l = 1; i + l <= pp.d; ++l) {
      const Int q = pp.pow(l);
      for (Int s = 1; s < q; ++s) {
        if (s % pp.p != 0) out.push_back({i, l, s});
      }
    }
  }
  return out;
}

/// e_i with e_i = 1 mod p_i^{d_i} and 0 modulo every other factor.
inline std::vector<Int> orthogonal_idempotents(const RingSpec& spec) {
  std::vector<Int> out;
  for (const auto& f : spec.factors) {
    const Int q = f.q();
    const Int rest = spec.m / q;
    out.push_back(mod_reduce(rest * inverse_mod(rest % q, q), spec.m));
  }
  return out;
}

}  // namespace minlin
