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

#include "lcong/padic.hpp"

#include <doctest.h>

#include "lcong/ff.hpp"
#include "lcong/nt.hpp"

using namespace lcong;
using namespace lcong::padic;

TEST_CASE("teichmuller fixed points and the mod-25 example") {
  UnramCtx z5(5, 1, 2);  // Z/25
  CHECK(teichmuller(z5, {0}) == OmElem{0});
  CHECK(teichmuller(z5, {1}) == OmElem{1});
  CHECK(teichmuller(z5, {2}) == OmElem{7});   // 2^5 = 32 = 7 mod 25, stable
  CHECK(teichmuller(z5, {4}) == OmElem{24});  // omega(-1) = -1
}

TEST_CASE("teichmuller lifts are roots of unity and multiplicative") {
  for (auto [p, m] : {std::pair<uint64_t, uint32_t>{2, 2}, {3, 2}, {3, 4}, {5, 2}}) {
    UnramCtx ctx(p, m, 4);
    auto fld = ff::make_field(p, m);
    if (fld->order() > 81) continue;
    for (uint64_t i = 0; i < fld->order(); ++i) {
      for (uint64_t j = 0; j < fld->order(); ++j) {
        auto a = fld->element_at(i), b = fld->element_at(j);
        auto w = teichmuller(ctx, fld->mul(a, b));
        CHECK(w == ctx.mul(teichmuller(ctx, a), teichmuller(ctx, b)));
      }
      auto w = teichmuller(ctx, fld->element_at(i));
      CHECK(ctx.pow(w, ctx.q) == w);
    }
  }
}

TEST_CASE("frobenius is the p-power map on teichmuller points") {
  UnramCtx f9(3, 2, 3);
  auto fld = ff::make_field(3, 2);
  for (uint64_t i = 0; i < 9; ++i) {
    auto c = fld->element_at(i);
    CHECK(f9.frobenius(teichmuller(f9, c)) == teichmuller(f9, fld->pow(c, 3)));
  }
  // tau^m = identity, tau is a ring hom
  for (uint64_t i = 0; i < 9; ++i) {
    for (uint64_t j = 0; j < 9; ++j) {
      OmElem a = {i % f9.pK, (i * 7 + 1) % f9.pK};
      OmElem b = {(j * 3 + 2) % f9.pK, j % f9.pK};
      CHECK(f9.frobenius(f9.mul(a, b)) == f9.mul(f9.frobenius(a), f9.frobenius(b)));
      CHECK(f9.frobenius(a, 2) == a);
    }
  }
  UnramCtx z3(3, 1, 3);
  OmElem a = {5};
  CHECK(z3.frobenius(a) == a);  // m = 1: identity
}

TEST_CASE("O_m inversion") {
  UnramCtx f9(3, 2, 5);
  OmElem a = {2, 7};
  CHECK(f9.mul(a, f9.inv(a)) == f9.one());
  CHECK_THROWS_AS(f9.inv(f9.scalar_mul(a, 3)), precision_error);
}

TEST_CASE("lambda coefficients: first values and the p=3 example") {
  // lambda_0 = 1, lambda_1 = pi
  auto l0 = lambda_exact(3, 1, 0);
  CHECK(l0.c[0] == 1);
  CHECK(l0.c[1] == 0);
  auto l1 = lambda_exact(3, 1, 1);
  CHECK(l1.c[0] == 0);
  CHECK(l1.c[1] == 1);
  // p = 3, m = 1: lambda_3 = pi^3/3! - pi = -(3/2) pi, val_pi = 3
  auto l3 = lambda_exact(3, 1, 3);
  CHECK(l3.c[0] == 0);
  CHECK(l3.c[1] == mpq_class(-3, 2));
  CHECK(l3.val_pi() == 3);
}

TEST_CASE("lambda congruence checks") {
  // p=3, m=2, n=4 (digits 1,1): lambda = pi^2 mod pi^4
  auto r = check_lambda_congruence(3, 2, 4);
  CHECK(r.holds);
  CHECK(r.threshold == 4);
  // p=2, m=1, n=2 >= q: v_pi(lambda_2) >= 2
  auto r2 = check_lambda_congruence(2, 1, 2);
  CHECK(r2.holds);
  CHECK(lambda_exact(2, 1, 2).val_pi() >= 2);
  // n=0 holds with s_p = 0
  CHECK(check_lambda_congruence(5, 1, 0).holds);

  // acceptance-strength sweep, small version
  for (auto [p, m] : {std::pair<uint64_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
    uint64_t q = checked_pow_u64(p, m);
    for (uint64_t n = 0; n <= 2 * q; ++n) {
      auto rep = check_lambda_congruence(p, m, n);
      CAPTURE(p);
      CAPTURE(m);
      CAPTURE(n);
      CHECK(rep.holds);
    }
  }
}

TEST_CASE("all-digits n!! agrees with n! below p") {
  for (uint64_t p : {2, 3, 5}) {
    for (uint64_t n = 0; n < p; ++n) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), n);
      CHECK(double_factorial_all_digits(n, p) == f);
    }
  }
}

TEST_CASE("lambda table matches direct composition of exp(pi X - pi X^q)") {
  for (auto [p, m] : {std::pair<uint64_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
    uint64_t q = checked_pow_u64(p, m);
    uint64_t nmax = 2 * q;
    // oracle: sum_k (pi X - pi X^q)^k / k! truncated at degree nmax,
    // with exact coefficients in Q[X]/(X^{p-1}+p)
    std::vector<ExactPiRational> series(nmax + 1, ExactPiRational::zero(p));
    std::vector<ExactPiRational> power(nmax + 1, ExactPiRational::zero(p));
    power[0] = ExactPiRational::from_mpq(p, 1);
    series[0] = power[0];
    for (uint64_t k = 1; k <= nmax; ++k) {
      // power <- power * (pi X - pi X^q)
      std::vector<ExactPiRational> next(nmax + 1, ExactPiRational::zero(p));
      for (uint64_t d = 0; d + 1 <= nmax; ++d) {
        auto piX = ExactPiRational::pi_power(p, 1, 1);
        next[d + 1] = next[d + 1] + power[d] * piX;
        if (d + q <= nmax) {
          auto mpiXq = ExactPiRational::pi_power(p, 1, -1);
          next[d + q] = next[d + q] + power[d] * mpiXq;
        }
      }
      power = std::move(next);
      mpz_class kf;
      mpz_fac_ui(kf.get_mpz_t(), k);
      mpq_class invkf(mpz_class(1), kf);
      invkf.canonicalize();
      for (uint64_t d = 0; d <= nmax; ++d)
        series[d] = series[d] + power[d] * ExactPiRational::from_mpq(p, invkf);
    }
    auto table = lambda_coeffs(p, m, nmax);
    for (uint64_t n = 0; n <= nmax; ++n) {
      CAPTURE(p);
      CAPTURE(n);
      CHECK((table[n] - series[n]).is_zero());
    }
  }
}

TEST_CASE("ramified scalars: valuation basics") {
  auto ram = make_ram_ctx(2, 1, 6, 2);  // w^2 = -2, pi = w^2... no: pi = w^v = w^2
  CHECK(ram->e == 2);
  CHECK(ram->from_int(2).valuation() == 2);        // val(p) = e
  CHECK(ram->zero().valuation() == ram->zero().cap());
  CHECK(ram->w_pow(2).valuation() == 2);           // val(pi) = v
  CHECK(ram->w_pow(1).valuation() == 1);

  auto ram3 = make_ram_ctx(3, 1, 5, 1);
  CHECK(ram3->e == 2);
  CHECK(ram3->from_int(3).valuation() == 2);
  CHECK(ram3->w_pow(1).valuation() == 1);
  // pi^{p-1} = -p
  CHECK((ram3->w_pow(1) * ram3->w_pow(1) + ram3->from_int(3)).is_zero());

  // v(ab) = v(a) + v(b), v(a+b) >= min, on samples
  auto a = ram3->from_int(6) * ram3->w_pow(1) + ram3->from_int(5);
  auto b = ram3->from_int(3) + ram3->w_pow(1);
  CHECK((a * b).valuation() == a.valuation() + b.valuation());
  CHECK((a + b).valuation() >= std::min(a.valuation(), b.valuation()));
}

TEST_CASE("ramified inversion") {
  auto ram = make_ram_ctx(3, 2, 5, 2);
  auto a = ram->one() + ram->w_pow(1) + ram->from_int(4);
  CHECK((a * ram->inv(a) - ram->one()).is_zero());
  CHECK_THROWS_AS(ram->inv(ram->from_int(3)), precision_error);
}

TEST_CASE("zeta_p: normalization and order") {
  // p = 2: zeta = -1 = 1 + pi exactly
  auto r2 = make_ram_ctx(2, 1, 6, 1);
  CHECK((r2->zeta_p() - r2->from_int(-1)).is_zero());

  // p = 3: zeta^2 + zeta + 1 = 0 and zeta = 1 + pi mod pi^2
  auto r3 = make_ram_ctx(3, 1, 6, 1);
  auto z = r3->zeta_p();
  CHECK((z * z + z + r3->one()).is_zero());
  CHECK((z - r3->one() - r3->w_pow(r3->v)).valuation() >= 2 * int64_t(r3->v));

  // zeta^p = 1 for p in {2, 3, 5}
  for (uint64_t p : {2, 3, 5}) {
    auto ram = make_ram_ctx(p, 1, 5, 1);
    auto zz = ram->zeta_p();
    auto acc = ram->one();
    for (uint64_t i = 0; i < p; ++i) acc = acc * zz;
    CHECK((acc - ram->one()).is_zero());
  }
}

TEST_CASE("embed_cyc") {
  auto r2 = make_ram_ctx(2, 1, 6, 1);
  CHECK((r2->embed_cyc({mpz_class(3)}) - r2->from_int(3)).is_zero());

  auto r3 = make_ram_ctx(3, 1, 6, 1);
  CHECK((r3->embed_cyc({mpz_class(1), mpz_class(0)}) - r3->one()).is_zero());
  // 1 + 2 zeta - 3 = 2(zeta - 1): valuation v, consistent with v_pi(zeta-1) = 1
  auto x = r3->embed_cyc({mpz_class(1), mpz_class(2)}) - r3->from_int(3);
  CHECK(x.valuation() == int64_t(r3->v));
}

TEST_CASE("reduce_pi_rational respects valuation and arithmetic") {
  auto ram = make_ram_ctx(3, 1, 6, 2);  // v = 2: pi = w^2
  auto x = ExactPiRational::pi_power(3, 1, mpq_class(5, 2));
  auto red = reduce_pi_rational(ram, x);
  CHECK(red.valuation() == 2);  // v * val_pi
  // ring hom on a sample: reduce(a*b) = reduce(a)*reduce(b)
  auto a = ExactPiRational::pi_power(3, 1, 1) + ExactPiRational::from_mpq(3, mpq_class(1, 4));
  auto b = ExactPiRational::pi_power(3, 3, mpq_class(7)) - ExactPiRational::from_mpq(3, 2);
  CHECK((reduce_pi_rational(ram, a * b) - reduce_pi_rational(ram, a) * reduce_pi_rational(ram, b))
            .is_zero());
  // the pi-subring flag
  CHECK(red.is_pi_integral());
  CHECK(!ram->w_pow(1).is_pi_integral());
}

TEST_CASE("frobenius on the ramified ring fixes w and Z_p") {
  auto ram = make_ram_ctx(3, 2, 4, 1);
  auto a = ram->from_om({2, 5}) * ram->w_pow(1) + ram->from_int(7);
  auto ta = ram->frobenius(a);
  CHECK(ram->frobenius(ta) == a);  // tau^2 = id
  CHECK(ram->frobenius(ram->w_pow(1)) == ram->w_pow(1));
  CHECK(ram->frobenius(ram->from_int(11)) == ram->from_int(11));
  // multiplicative
  auto b = ram->from_om({1, 3});
  CHECK(ram->frobenius(a * b) == ram->frobenius(a) * ram->frobenius(b));
}
