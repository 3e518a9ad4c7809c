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

#include "lcong/series.hpp"

#include "lcong/errors.hpp"

namespace lcong::padic {

PadicSeries::PadicSeries(RamPtr ctx_, uint32_t deg) : ctx(std::move(ctx_)) {
  a.assign(deg + 1, ctx->zero());
}

PadicSeries PadicSeries::one(const RamPtr& ctx, uint32_t deg) {
  PadicSeries s(ctx, deg);
  s.a[0] = ctx->one();
  return s;
}

PadicSeries PadicSeries::operator+(const PadicSeries& o) const {
  PadicSeries r = *this;
  for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] + o.a[k];
  return r;
}

PadicSeries PadicSeries::operator-(const PadicSeries& o) const {
  PadicSeries r = *this;
  for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] - o.a[k];
  return r;
}

PadicSeries PadicSeries::operator*(const PadicSeries& o) const {
  PadicSeries r(ctx, degree());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j < a.size(); ++j) r.a[i + j] = r.a[i + j] + a[i] * o.a[j];
  }
  return r;
}

PadicSeries PadicSeries::inverse() const {
  if (!(a[0] - ctx->one()).is_zero())
    throw precision_error("series inversion expects constant coefficient 1");
  PadicSeries b(ctx, degree());
  b.a[0] = ctx->one();
  for (size_t k = 1; k < a.size(); ++k) {
    PadicScalar acc = ctx->zero();
    for (size_t j = 1; j <= k; ++j) acc = acc + a[j] * b.a[k - j];
    b.a[k] = -acc;
  }
  return b;
}

PadicSeries PadicSeries::pow(int64_t e) const {
  PadicSeries base = e < 0 ? inverse() : *this;
  uint64_t n = e < 0 ? static_cast<uint64_t>(-e) : static_cast<uint64_t>(e);
  PadicSeries r = one(ctx, degree());
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

PadicSeries PadicSeries::scale_T(const PadicScalar& s) const {
  PadicSeries r = *this;
  PadicScalar sp = ctx->one();
  for (size_t k = 1; k < a.size(); ++k) {
    sp = sp * s;
    r.a[k] = a[k] * sp;
  }
  return r;
}

}  // namespace lcong::padic
