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

#include "lcong/padic.hpp"

namespace lcong::padic {

/// Power series in T truncated at a fixed degree, with ramified-ring
/// coefficients.  Determinant and L-series instances always have a_0 = 1.
class PadicSeries {
 public:
  PadicSeries() = default;
  PadicSeries(RamPtr ctx, uint32_t deg);  // zero series up to T^deg

  static PadicSeries one(const RamPtr& ctx, uint32_t deg);

  RamPtr ctx;
  std::vector<PadicScalar> a;  // a[k] = coefficient of T^k

  uint32_t degree() const { return static_cast<uint32_t>(a.size()) - 1; }

  PadicSeries operator+(const PadicSeries& o) const;
  PadicSeries operator-(const PadicSeries& o) const;
  PadicSeries operator*(const PadicSeries& o) const;
  bool operator==(const PadicSeries& o) const { return a == o.a; }

  /// Multiplicative inverse; requires a_0 = 1.
  PadicSeries inverse() const;

  /// Integer power, negative exponents through inverse().
  PadicSeries pow(int64_t e) const;

  /// T -> s*T: scales a_k by s^k.
  PadicSeries scale_T(const PadicScalar& s) const;
};

}  // namespace lcong::padic
