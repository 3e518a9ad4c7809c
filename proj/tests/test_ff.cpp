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

#include "lcong/ff.hpp"

#include <doctest.h>

#include <set>

#include "lcong/nt.hpp"

using namespace lcong;
using namespace lcong::ff;

TEST_CASE("make_field picks the lex-least irreducible modulus") {
  auto f2 = make_field(2, 1);
  CHECK(f2->modulus == std::vector<uint32_t>{0, 1});  // x

  auto f9 = make_field(3, 2);
  CHECK(f9->modulus == std::vector<uint32_t>{1, 0, 1});  // x^2 + 1

  auto f8 = make_field(2, 3);
  CHECK(f8->modulus == std::vector<uint32_t>{1, 1, 0, 1});  // x^3 + x + 1
}

TEST_CASE("make_field rejects non-prime characteristic") {
  CHECK_THROWS_AS(make_field(6, 1), input_error);
  CHECK_THROWS_AS(make_field(1, 1), input_error);
}

TEST_CASE("trace examples") {
  auto f9 = make_field(3, 2);
  CHECK(f9->trace_to_prime(f9->zero()) == 0);
  CHECK(f9->trace_to_prime(f9->one()) == 2);  // deg * 1 = 2 mod 3

  auto f4 = make_field(2, 2);
  // omega = class of x, omega^2 + omega + 1 = 0; Tr(omega) = omega + omega^2 = 1
  CHECK(f4->modulus == std::vector<uint32_t>{1, 1, 1});
  CHECK(f4->trace_to_prime(f4->generator()) == 1);
}

TEST_CASE("extend_field embeddings") {
  auto f2 = make_field(2, 1);
  auto same = extend_field(f2, 1);
  CHECK(same->degree == 1);
  CHECK(same->base == f2);

  auto f4 = extend_field(f2, 2);
  CHECK(f4->modulus == std::vector<uint32_t>{1, 1, 1});
  CHECK(f4->embed_from_base(f2->one()) == f4->one());

  auto f9 = make_field(3, 2);
  auto f81 = extend_field(f9, 2);
  CHECK(f81->degree == 4);
  // embedded generator g satisfies g^2 + 1 = 0
  auto g = f81->base_generator_image;
  auto g2 = f81->mul(g, g);
  CHECK(f81->add(g2, f81->one()) == f81->zero());
  // embedding is a ring homomorphism on a sample
  auto a = f9->generator();
  auto b = f9->add(a, f9->one());
  CHECK(f81->mul(f81->embed_from_base(a), f81->embed_from_base(b)) ==
        f81->embed_from_base(f9->mul(a, b)));
}

TEST_CASE("frobenius fixes trace and trace tower composes") {
  for (auto [p, m, r] : {std::tuple<uint64_t, uint32_t, uint32_t>{2, 2, 2},
                         {2, 1, 3},
                         {3, 1, 2},
                         {2, 2, 3}}) {
    auto base = make_field(p, m);
    auto big = extend_field(base, r);
    if (big->order() > 256) continue;
    for (uint64_t k = 0; k < big->order(); ++k) {
      auto a = big->element_at(k);
      auto ap = big->pow(a, p);
      CHECK(big->trace_to_prime(a) == big->trace_to_prime(ap));
    }
  }
}

TEST_CASE("tower trace composes with the subfield trace") {
  // Tr_{F_{q^r}/F_p} = Tr_{F_q/F_p} o Tr_{F_{q^r}/F_q} on embedded elements:
  // checked on base-field elements where the relative trace is r * a.
  auto f9 = make_field(3, 2);
  auto f81 = extend_field(f9, 2);
  for (uint64_t k = 0; k < f9->order(); ++k) {
    auto a = f9->element_at(k);
    auto lifted = f81->embed_from_base(a);
    uint32_t lhs = f81->trace_to_prime(lifted);
    // relative trace of an F_9 element in F_81 is 2*a
    auto rel = f9->add(a, a);
    CHECK(lhs == f9->trace_to_prime(rel));
  }
}

TEST_CASE("eval_poly basics") {
  auto f3 = make_field(3, 1);
  SparsePoly f;
  f.n = 1;
  f.coeff_field = f3;
  f.terms = {{{2}, f3->one()}};
  f.validate();
  CHECK(eval_poly(f, *f3, {f3->from_uint(2)}) == f3->one());  // 4 mod 3

  auto f2 = make_field(2, 1);
  auto f4 = extend_field(f2, 2);
  SparsePoly xy;
  xy.n = 2;
  xy.coeff_field = f2;
  xy.terms = {{{1, 1}, f2->one()}};
  auto w = f4->generator();
  CHECK(eval_poly(xy, *f4, {w, w}) == f4->mul(w, w));
}

TEST_CASE("point stream yields each point once, chunks partition") {
  auto f3 = make_field(3, 1);
  PointStream ps(f3, 2);
  CHECK(ps.size() == 9);
  std::set<std::vector<FFElement>> seen;
  ps.for_each([&](const std::vector<FFElement>& pt) { seen.insert(pt); });
  CHECK(seen.size() == 9);

  auto f4 = make_field(2, 2);
  PointStream ps4(f4, 1);
  std::set<std::vector<FFElement>> whole, parts;
  ps4.for_each([&](const auto& pt) { whole.insert(pt); });
  for (uint64_t c = 0; c < 2; ++c)
    ps4.for_each_in_chunk(c, 2, [&](const auto& pt) {
      CHECK(parts.insert(pt).second);  // no duplicates across chunks
    });
  CHECK(whole == parts);
  CHECK(whole.size() == 4);
}

TEST_CASE("point stream budget") {
  auto f2 = make_field(2, 1);
  CHECK_THROWS_AS(PointStream(f2, 2, 3), budget_error);
}

TEST_CASE("field inversion and pow") {
  auto f8 = make_field(2, 3);
  for (uint64_t k = 1; k < 8; ++k) {
    auto a = f8->element_at(k);
    CHECK(f8->mul(a, f8->inv(a)) == f8->one());
    CHECK(f8->pow(a, 7) == f8->one());
  }
}
