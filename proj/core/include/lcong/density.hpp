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

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lcong/errors.hpp"

namespace lcong::density {

constexpr uint64_t kDefaultBudget = 10'000'000;

/// Finite set D of exponent vectors in N^n.
struct ExponentSet {
  uint32_t n = 0;
  std::vector<std::vector<uint32_t>> d;  // sorted lex, distinct

  ExponentSet() = default;
  ExponentSet(uint32_t n, std::vector<std::vector<uint32_t>> vecs);

  size_t size() const { return d.size(); }

  /// All d have d_i = 0?
  bool hyperplane_contained(uint32_t i) const;
  /// Contained in some coordinate hyperplane (density infinite)?
  bool hyperplane_contained() const;

  /// D_I: the elements supported inside I, projected to the I-coordinates
  /// (an ExponentSet of dimension |I|).
  ExponentSet restrict_to(const std::vector<uint32_t>& I) const;

  /// Componentwise sum of all vectors (the node bound of the digit graph).
  std::vector<uint64_t> component_sum() const;
};

/// Element U of E_{D,p}(r): a tuple (u_d) with sum u_d d = 0 mod p^r - 1 and
/// sum u_d d coordinatewise positive.  Stored by values; digits are derived.
struct Solution {
  uint64_t p = 0;
  uint32_t r = 0;
  std::vector<uint64_t> u;  // indexed like D.d

  uint64_t weight() const;  // s_p(U)
  /// Base-p digit i of u[which], 0 <= i < r.
  uint32_t digit(size_t which, uint32_t i) const;
};

/// Representative of u mod p^r - 1 in {1, ..., p^r - 1} (0 for u = 0);
/// guarantees s_p(u) >= s_p(reduce_mod(u)).
uint64_t reduce_mod(uint64_t u, uint64_t p, uint32_t r);

/// All of E_{D,p}(r), deterministic order (odometer over tuples).
std::vector<Solution> enumerate_solutions(const ExponentSet& D, uint64_t p, uint32_t r,
                                          uint64_t budget = kDefaultBudget);

/// min weight over E_{D,p}(r); nullopt when the set is empty.
std::optional<uint64_t> s_min(const ExponentSet& D, uint64_t p, uint32_t r,
                              uint64_t budget = kDefaultBudget);

/// The digit shift delta_r applied coordinatewise (rotates base-p digits).
Solution shift(const Solution& U);

/// phi_U(0): (sum u_d d) / (p^r - 1).
std::vector<uint64_t> phi0(const ExponentSet& D, const Solution& U);

/// [phi_U(0), ..., phi_U(r-1)].
std::vector<std::vector<uint64_t>> support_map(const ExponentSet& D, const Solution& U);

/// The support map is injective?
bool is_irreducible(const ExponentSet& D, const Solution& U);

/// Glue two solutions with phi_U(0) = phi_U'(0): digits of U form the low
/// block, digits of U' the high block.
Solution glue(const ExponentSet& D, const Solution& U, const Solution& Up);

struct SupportGraph {
  uint64_t p = 0;
  std::vector<std::vector<uint64_t>> nodes;  // sorted lex; 1 <= e <= sum(D)
  struct Edge {
    uint32_t from = 0, to = 0;           // node indices
    uint64_t weight = 0;                 // min digit weight on this edge
    std::vector<std::vector<uint8_t>> digits;  // all v with sum d v_d = p e - e'
    bool critical = false;
  };
  std::vector<Edge> edges;
  std::vector<uint8_t> node_critical;

  std::optional<uint32_t> node_index(const std::vector<uint64_t>& e) const;
};

/// Nodes 1 <= e <= sum_D d (componentwise); edge (e, e') for every solvable
/// digit equation sum_D d v_d = p e - e'.  Throws input_error when D is
/// hyperplane-contained (density infinite), budget_error when the node box
/// is too large.
SupportGraph build_support_graph(const ExponentSet& D, uint64_t p,
                                 uint64_t budget = kDefaultBudget);

struct MinMeanCycle {
  bool has_cycle = false;
  mpq_class mu;  // min over directed cycles of weight/length
};

/// Exact minimum cycle mean (Karp) and the critical subgraph: nodes/edges on
/// some cycle achieving mu, marked in g via scaled reduced weights, feasible
/// potentials, tight edges and SCCs containing a cycle.
MinMeanCycle min_mean_cycle(SupportGraph& g);

struct Density {
  bool infinite = false;
  mpq_class value;  // meaningful when !infinite
  bool operator==(const Density& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

/// delta_p(D) = mu* / (p-1), or infinity when D is hyperplane-contained.
Density density(const ExponentSet& D, uint64_t p, uint64_t budget = kDefaultBudget);

struct SupportData {
  Density delta;
  SupportGraph graph;                              // with criticality marked
  std::vector<std::vector<uint64_t>> support;      // Sigma_p(D), sorted lex
  /// Critical edges with their min-weight digit vectors V(e,e') and w(e,e').
  struct DigitSet {
    std::vector<uint64_t> e, e_prime;
    uint64_t weight = 0;
    std::vector<std::vector<uint8_t>> digits;
  };
  std::vector<DigitSet> digit_sets;
};

/// Full density pipeline: graph, minimum mean, critical subgraph, minimal
/// support and digit sets.  Throws input_error when the density is infinite.
SupportData support_data(const ExponentSet& D, uint64_t p, uint64_t budget = kDefaultBudget);

std::vector<std::vector<uint64_t>> minimal_support(const ExponentSet& D, uint64_t p,
                                                   uint64_t budget = kDefaultBudget);

/// Definitional digit sets via minimal irreducible solutions of length
/// <= r_max (test oracle for the graph characterization): the map
/// (e, e') -> set of lowest-digit vectors psi(U).
std::map<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>,
         std::vector<std::vector<uint8_t>>>
digit_sets_by_enumeration(const ExponentSet& D, uint64_t p, uint32_t r_max,
                          const mpq_class& delta, uint64_t budget = kDefaultBudget);

}  // namespace lcong::density
