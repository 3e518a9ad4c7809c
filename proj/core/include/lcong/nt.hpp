// Copyright 2026 the lcong authors
//
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

#pragma once

#include <cstdint>
#include <vector>

#include "lcong/errors.hpp"

namespace lcong {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

/// p-weight: sum of base-p digits of n.
inline uint64_t p_weight(uint64_t n, uint64_t p) {
  uint64_t s = 0;
  while (n) { s += n % p; n /= p; }
  return s;
}

/// Base-p digits of n, least significant first, padded to `len` (0 = natural length).
inline std::vector<uint32_t> p_digits(uint64_t n, uint64_t p, size_t len = 0) {
  std::vector<uint32_t> d;
  while (n) { d.push_back(static_cast<uint32_t>(n % p)); n /= p; }
  while (d.size() < len) d.push_back(0);
  return d;
}

/// p^e with overflow check.
inline uint64_t checked_pow_u64(uint64_t p, uint64_t e, const char* what = "power") {
  uint64_t r = 1;
  for (uint64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) throw budget_error(std::string(what) + ": p^e exceeds 64 bits");
    r *= p;
  }
  return r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) { uint64_t t = a % b; a = b; b = t; }
  return a;
}

inline uint64_t binom_u64(uint32_t n, uint32_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint32_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace lcong
