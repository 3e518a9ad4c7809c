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

#include "lcong/density.hpp"

#include <doctest.h>

#include <algorithm>

#include "lcong/nt.hpp"

using namespace lcong;
using namespace lcong::density;

namespace {
ExponentSet d1(std::vector<uint32_t> exps) {
  std::vector<std::vector<uint32_t>> v;
  for (auto e : exps) v.push_back({e});
  return ExponentSet(1, v);
}
}  // namespace

TEST_CASE("enumerate_solutions small cases") {
  auto s = enumerate_solutions(d1({2}), 3, 1);
  REQUIRE(s.size() == 2);
  CHECK(s[0].u == std::vector<uint64_t>{1});
  CHECK(s[0].weight() == 1);
  CHECK(s[1].u == std::vector<uint64_t>{2});
  CHECK(s[1].weight() == 2);

  auto s2 = enumerate_solutions(d1({1}), 2, 2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].u == std::vector<uint64_t>{3});
  CHECK(s2[0].weight() == 2);

  ExponentSet D(2, {{1, 0}});
  CHECK(enumerate_solutions(D, 2, 1).empty());
  CHECK(enumerate_solutions(D, 3, 2).empty());
}

TEST_CASE("s_min examples") {
  CHECK(s_min(d1({2}), 3, 1) == 1);
  CHECK(s_min(d1({1}), 2, 2) == 2);
  CHECK(s_min(d1({3}), 2, 2) == 1);
  ExponentSet D(2, {{1, 0}});
  CHECK(!s_min(D, 2, 1).has_value());
}

TEST_CASE("reduce_mod") {
  CHECK(reduce_mod(0, 2, 2) == 0);
  CHECK(reduce_mod(5, 2, 2) == 2);
  CHECK(p_weight(5, 2) >= p_weight(2, 2));
  CHECK(reduce_mod(3, 2, 1) == 1);  // p^r - 1 = 1
  // property: s_p(u) >= s_p(reduced) on a sweep
  for (uint64_t u = 0; u < 200; ++u)
    for (uint32_t r = 1; r <= 3; ++r)
      CHECK(p_weight(u, 3) >= p_weight(reduce_mod(u, 3, r), 3));
}

TEST_CASE("shift examples and properties") {
  Solution U{2, 2, {3}};  // D = {1}
  CHECK(shift(U).u == std::vector<uint64_t>{3});  // p^r - 1 fixed

  Solution V{2, 2, {1}};  // D = {3}
  CHECK(shift(V).u == std::vector<uint64_t>{2});
  CHECK(shift(V).weight() == V.weight());

  // shift^r = identity
  Solution W{3, 3, {11, 7}};
  Solution cur = W;
  for (uint32_t i = 0; i < 3; ++i) cur = shift(cur);
  CHECK(cur.u == W.u);
}

TEST_CASE("support_map and irreducibility") {
  auto D1 = d1({1});
  Solution U{2, 2, {3}};
  CHECK(support_map(D1, U) ==
        std::vector<std::vector<uint64_t>>{{1}, {1}});
  CHECK(!is_irreducible(D1, U));

  auto D3 = d1({3});
  Solution V{2, 2, {1}};
  CHECK(support_map(D3, V) ==
        std::vector<std::vector<uint64_t>>{{1}, {2}});
  CHECK(is_irreducible(D3, V));

  auto D2 = d1({2});
  Solution W{3, 1, {1}};
  CHECK(support_map(D2, W) == std::vector<std::vector<uint64_t>>{{1}});
  CHECK(is_irreducible(D2, W));  // any length-1 solution
}

TEST_CASE("lemma mini(iii): the shifted support is the translated support") {
  auto D = d1({3, 5});
  for (const auto& U : enumerate_solutions(D, 2, 4)) {
    auto sup = support_map(D, U);
    Solution S = shift(U);
    auto sup1 = support_map(D, S);
    for (uint32_t i = 0; i < U.r; ++i) CHECK(sup1[i] == sup[(i + 1) % U.r]);
    CHECK(S.weight() == U.weight());
  }
}

TEST_CASE("glue") {
  auto D2 = d1({2});
  Solution U{3, 1, {1}};
  auto G = glue(D2, U, U);
  CHECK(G.r == 2);
  CHECK(G.u == std::vector<uint64_t>{4});
  CHECK(G.weight() == 2);
  CHECK(support_map(D2, G) == std::vector<std::vector<uint64_t>>{{1}, {1}});

  auto D3 = d1({3});
  Solution V{2, 2, {1}};
  auto G2 = glue(D3, V, V);
  CHECK(G2.r == 4);
  CHECK(G2.u == std::vector<uint64_t>{5});
  CHECK(G2.weight() == 2);
  CHECK(support_map(D3, G2) ==
        std::vector<std::vector<uint64_t>>{{1}, {2}, {1}, {2}});

  // mismatched supports rejected
  auto D15 = d1({1, 5});
  auto sols = enumerate_solutions(D15, 2, 2);
  // find two solutions with different phi(0)
  bool threw = false;
  for (size_t i = 0; i < sols.size() && !threw; ++i)
    for (size_t j = 0; j < sols.size() && !threw; ++j)
      if (phi0(D15, sols[i]) != phi0(D15, sols[j])) {
        CHECK_THROWS_AS(glue(D15, sols[i], sols[j]), input_error);
        threw = true;
      }
  CHECK(threw);
}

TEST_CASE("support graph: D={3}, p=2") {
  auto g = build_support_graph(d1({3}), 2);
  CHECK(g.nodes == std::vector<std::vector<uint64_t>>{{1}, {2}, {3}});
  REQUIRE(g.edges.size() == 3);
  auto find_edge = [&](uint64_t a, uint64_t b) -> const SupportGraph::Edge& {
    for (const auto& e : g.edges)
      if (g.nodes[e.from][0] == a && g.nodes[e.to][0] == b) return e;
    REQUIRE(false);
    return g.edges[0];
  };
  CHECK(find_edge(1, 2).weight == 0);
  CHECK(find_edge(1, 2).digits == std::vector<std::vector<uint8_t>>{{0}});
  CHECK(find_edge(2, 1).weight == 1);
  CHECK(find_edge(3, 3).weight == 1);
}

TEST_CASE("support graph: loops for D={2} p=3 and D={1} p=2") {
  auto g = build_support_graph(d1({2}), 3);
  CHECK(g.nodes.size() == 2);
  REQUIRE(g.edges.size() == 2);
  for (const auto& e : g.edges) {
    CHECK(e.from == e.to);
    CHECK(e.weight == g.nodes[e.from][0]);  // weights 1 and 2
  }
  auto g2 = build_support_graph(d1({1}), 2);
  CHECK(g2.nodes.size() == 1);
  REQUIRE(g2.edges.size() == 1);
  CHECK(g2.edges[0].weight == 1);
}

TEST_CASE("hyperplane containment signals infinite density") {
  ExponentSet D(2, {{1, 0}});
  CHECK_THROWS_AS(build_support_graph(D, 2), input_error);
  CHECK(lcong::density::density(D, 2).infinite);
}

TEST_CASE("min mean cycle on the D={3} p=2 graph") {
  auto g = build_support_graph(d1({3}), 2);
  auto r = min_mean_cycle(g);
  REQUIRE(r.has_cycle);
  CHECK(r.mu == mpq_class(1, 2));
  // critical nodes {1,2}; loop at 3 has mean 1 and is not critical
  CHECK(g.node_critical[0] == 1);
  CHECK(g.node_critical[1] == 1);
  CHECK(g.node_critical[2] == 0);
  int crit_edges = 0;
  for (const auto& e : g.edges)
    if (e.critical) ++crit_edges;
  CHECK(crit_edges == 2);
}

TEST_CASE("min mean cycle: two loops keep only the lighter one") {
  auto g = build_support_graph(d1({2}), 3);
  auto r = min_mean_cycle(g);
  REQUIRE(r.has_cycle);
  CHECK(r.mu == 1);
  CHECK(g.node_critical[0] == 1);  // node 1, loop weight 1
  CHECK(g.node_critical[1] == 0);  // node 2, loop weight 2
}

TEST_CASE("density examples") {
  CHECK(lcong::density::density(d1({1}), 2) == Density{false, mpq_class(1)});
  CHECK(lcong::density::density(d1({2}), 3) == Density{false, mpq_class(1, 2)});
  ExponentSet Dxy(2, {{1, 1}});
  CHECK(lcong::density::density(Dxy, 2) == Density{false, mpq_class(1)});
  CHECK(lcong::density::density(d1({3}), 2) == Density{false, mpq_class(1, 2)});
}

TEST_CASE("minimal support examples") {
  CHECK(minimal_support(d1({3}), 2) ==
        std::vector<std::vector<uint64_t>>{{1}, {2}});
  CHECK(minimal_support(d1({2}), 3) == std::vector<std::vector<uint64_t>>{{1}});
  ExponentSet Dxy(2, {{1, 1}});
  CHECK(minimal_support(Dxy, 2) == std::vector<std::vector<uint64_t>>{{1, 1}});
}

TEST_CASE("digit sets on critical edges") {
  auto sd = support_data(d1({3}), 2);
  REQUIRE(sd.digit_sets.size() == 2);
  for (const auto& ds : sd.digit_sets) {
    if (ds.e == std::vector<uint64_t>{1}) {
      CHECK(ds.e_prime == std::vector<uint64_t>{2});
      CHECK(ds.weight == 0);
      CHECK(ds.digits == std::vector<std::vector<uint8_t>>{{0}});
    } else {
      CHECK(ds.e == std::vector<uint64_t>{2});
      CHECK(ds.e_prime == std::vector<uint64_t>{1});
      CHECK(ds.weight == 1);
      CHECK(ds.digits == std::vector<std::vector<uint8_t>>{{1}});
    }
  }

  auto sd2 = support_data(d1({1}), 3);
  REQUIRE(sd2.digit_sets.size() == 1);
  CHECK(sd2.digit_sets[0].weight == 2);
  CHECK(sd2.digit_sets[0].digits == std::vector<std::vector<uint8_t>>{{2}});

  auto sd3 = support_data(d1({2}), 3);
  REQUIRE(sd3.digit_sets.size() == 1);
  CHECK(sd3.digit_sets[0].weight == 1);
  CHECK(sd3.digit_sets[0].digits == std::vector<std::vector<uint8_t>>{{1}});
}

TEST_CASE("graph characterization matches the definitional digit sets") {
  struct Case {
    ExponentSet D;
    uint64_t p;
  };
  std::vector<Case> cases = {{d1({3}), 2}, {d1({2}), 3}, {d1({1}), 2},
                             {d1({3, 5}), 2}, {d1({2, 3}), 3},
                             {ExponentSet(2, {{1, 1}}), 2},
                             {ExponentSet(2, {{1, 1}, {2, 0}}), 2}};
  for (const auto& [D, p] : cases) {
    CAPTURE(p);
    auto sd = support_data(D, p);
    uint32_t R = static_cast<uint32_t>(sd.support.size()) + 2;
    auto defs = digit_sets_by_enumeration(D, p, R, sd.delta.value);
    // Every definitional V(e,e') appears as a critical edge with the same
    // digit list, and vice versa.
    CHECK(defs.size() == sd.digit_sets.size());
    for (const auto& ds : sd.digit_sets) {
      auto it = defs.find({ds.e, ds.e_prime});
      REQUIRE(it != defs.end());
      auto sorted = ds.digits;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == it->second);
      // Lemma constantweight: every member has the edge weight
      for (const auto& v : it->second) {
        uint64_t w = 0;
        for (auto x : v) w += x;
        CHECK(w == ds.weight);
      }
    }
  }
}

TEST_CASE("brute-force density agrees with the solver") {
  struct Case {
    ExponentSet D;
    uint64_t p;
  };
  std::vector<Case> cases = {{d1({3}), 2},  {d1({2}), 3},          {d1({1}), 2},
                             {d1({3, 5}), 2}, {ExponentSet(2, {{1, 1}}), 2},
                             {d1({2}), 5},  {d1({4}), 3}};
  for (const auto& [D, p] : cases) {
    CAPTURE(p);
    auto sd = support_data(D, p);
    uint32_t R = static_cast<uint32_t>(sd.support.size()) + 2;
    bool attained = false;
    for (uint32_t r = 1; r <= R; ++r) {
      auto sm = s_min(D, p, r);
      if (!sm) continue;
      mpq_class val(static_cast<long>(*sm), static_cast<long>(r * (p - 1)));
      val.canonicalize();
      CHECK(val >= sd.delta.value);
      if (val == sd.delta.value) attained = true;
    }
    CHECK(attained);
  }
}

TEST_CASE("lemma qmin: arbitrary positive congruent tuples weigh at least s_min") {
  auto D = d1({3, 5});
  uint64_t p = 2;
  uint32_t r = 3;
  uint64_t M = checked_pow_u64(p, r) - 1;
  auto smin = s_min(D, p, r);
  REQUIRE(smin.has_value());
  // sweep tuples beyond the canonical range
  for (uint64_t a = 0; a < 40; ++a) {
    for (uint64_t b = 0; b < 40; ++b) {
      uint64_t s = 3 * a + 5 * b;
      if (s == 0 || s % M != 0) continue;
      CHECK(p_weight(a, p) + p_weight(b, p) >= *smin);
    }
  }
}

TEST_CASE("lemma DetDI: density of D against its restrictions") {
  std::vector<ExponentSet> sets = {ExponentSet(2, {{1, 1}, {2, 0}}),
                                   ExponentSet(2, {{2, 1}, {1, 2}}),
                                   ExponentSet(2, {{1, 1}})};
  for (const auto& D : sets) {
    for (uint64_t p : {2, 3}) {
      auto dD = lcong::density::density(D, p);
      REQUIRE(!dD.infinite);
      std::vector<std::vector<uint32_t>> subsets = {{}, {0}, {1}, {0, 1}};
      for (const auto& I : subsets) {
        auto DI = D.restrict_to(I);
        auto dI = DI.d.empty() ? Density{true, {}} : lcong::density::density(DI, p);
        if (dI.infinite) continue;
        mpq_class bound = dI.value + mpq_class(static_cast<long>(D.n - I.size()));
        CHECK(dD.value <= bound);
      }
    }
  }
}

TEST_CASE("digit bijection: minimal solutions with a fixed support cycle") {
  // Prop decbasep, |M(phi)| = prod |V(phi(-i-1), phi(-i))| over critical
  // cycles of length <= 4, and digits inject into the product.
  struct Case {
    ExponentSet D;
    uint64_t p;
  };
  std::vector<Case> cases = {{d1({3}), 2}, {d1({2}), 3}, {d1({3, 5}), 2}, {d1({2, 3}), 3}};
  for (const auto& [D, p] : cases) {
    auto sd = support_data(D, p);
    auto edge_digits = [&](const std::vector<uint64_t>& e,
                           const std::vector<uint64_t>& ep)
        -> const std::vector<std::vector<uint8_t>>* {
      for (const auto& ds : sd.digit_sets)
        if (ds.e == e && ds.e_prime == ep) return &ds.digits;
      return nullptr;
    };
    for (uint32_t len = 1; len <= 4; ++len) {
      // count minimal solutions per support cycle
      std::map<std::vector<std::vector<uint64_t>>, uint64_t> count;
      for (const auto& U : enumerate_solutions(D, p, len)) {
        mpq_class dens(static_cast<long>(U.weight()), static_cast<long>((p - 1) * len));
        dens.canonicalize();
        if (dens != sd.delta.value) continue;
        ++count[support_map(D, U)];
      }
      for (const auto& [sup, cnt] : count) {
        uint64_t expect = 1;
        bool all_edges = true;
        for (uint32_t i = 0; i < len; ++i) {
          // edge (phi(-i-1), phi(-i)) = (sup[(len-i-1) % len], sup[(len-i) % len])
          const auto* dl = edge_digits(sup[(2 * len - i - 1) % len], sup[(len - i) % len]);
          if (!dl) {
            all_edges = false;
            break;
          }
          expect *= dl->size();
        }
        CAPTURE(p);
        CAPTURE(len);
        REQUIRE(all_edges);
        CHECK(cnt == expect);
      }
    }
  }
}

TEST_CASE("solution enumeration budget") {
  CHECK_THROWS_AS(enumerate_solutions(d1({1, 2, 3}), 5, 8, 1000), budget_error);
}
