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

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "lcong/nt.hpp"

namespace lcong::density {

ExponentSet::ExponentSet(uint32_t n_, std::vector<std::vector<uint32_t>> vecs)
    : n(n_), d(std::move(vecs)) {
  for (const auto& v : d)
    if (v.size() != n) throw input_error("exponent vector dimension mismatch");
  std::sort(d.begin(), d.end());
  for (size_t i = 1; i < d.size(); ++i)
    if (d[i - 1] == d[i]) throw input_error("duplicate exponent vector in D");
}

bool ExponentSet::hyperplane_contained(uint32_t i) const {
  for (const auto& v : d)
    if (v[i] != 0) return false;
  return true;
}

bool ExponentSet::hyperplane_contained() const {
  if (d.empty()) return true;
  for (uint32_t i = 0; i < n; ++i)
    if (hyperplane_contained(i)) return true;
  return false;
}

ExponentSet ExponentSet::restrict_to(const std::vector<uint32_t>& I) const {
  std::vector<std::vector<uint32_t>> out;
  for (const auto& v : d) {
    bool supported = true;
    for (uint32_t i = 0; i < n && supported; ++i) {
      if (v[i] != 0 && std::find(I.begin(), I.end(), i) == I.end()) supported = false;
    }
    if (!supported) continue;
    std::vector<uint32_t> proj;
    proj.reserve(I.size());
    for (uint32_t i : I) proj.push_back(v[i]);
    out.push_back(std::move(proj));
  }
  return ExponentSet(static_cast<uint32_t>(I.size()), std::move(out));
}

std::vector<uint64_t> ExponentSet::component_sum() const {
  std::vector<uint64_t> s(n, 0);
  for (const auto& v : d)
    for (uint32_t i = 0; i < n; ++i) s[i] += v[i];
  return s;
}

uint64_t Solution::weight() const {
  uint64_t w = 0;
  for (uint64_t x : u) w += p_weight(x, p);
  return w;
}

uint32_t Solution::digit(size_t which, uint32_t i) const {
  uint64_t x = u[which];
  for (uint32_t t = 0; t < i; ++t) x /= p;
  return static_cast<uint32_t>(x % p);
}

uint64_t reduce_mod(uint64_t u, uint64_t p, uint32_t r) {
  if (u == 0) return 0;
  uint64_t M = checked_pow_u64(p, r) - 1;
  if (M == 0) return 1;  // p^r - 1 = 1: the representative set is {1}
  return (u - 1) % M + 1;
}

std::vector<Solution> enumerate_solutions(const ExponentSet& D, uint64_t p, uint32_t r,
                                          uint64_t budget) {
  if (r < 1) throw input_error("solution length must be positive");
  uint64_t pr = checked_pow_u64(p, r, "p^r");
  uint64_t total = 1;
  for (size_t i = 0; i < D.size(); ++i) {
    if (total > budget / pr + 1) throw budget_error("solution enumeration exceeds budget ((p^r)^#D > " + std::to_string(budget) + ")");
    total *= pr;
  }
  if (total > budget)
    throw budget_error("solution enumeration exceeds budget ((p^r)^#D = " +
                       std::to_string(total) + " > " + std::to_string(budget) + ")");

  uint64_t M = pr - 1;
  std::vector<Solution> out;
  std::vector<uint64_t> u(D.size(), 0);
  std::vector<uint64_t> acc(D.n, 0);  // sum u_d d, maintained incrementally

  for (uint64_t idx = 0;; ++idx) {
    bool ok = true;
    for (uint32_t i = 0; i < D.n && ok; ++i) {
      if (acc[i] == 0 || (M > 0 && acc[i] % M != 0)) ok = false;
    }
    if (ok) out.push_back(Solution{p, r, u});
    if (idx + 1 == total) break;
    // odometer: last index fastest
    for (size_t t = D.size(); t-- > 0;) {
      if (u[t] + 1 < pr) {
        ++u[t];
        for (uint32_t i = 0; i < D.n; ++i) acc[i] += D.d[t][i];
        break;
      }
      for (uint32_t i = 0; i < D.n; ++i) acc[i] -= u[t] * D.d[t][i];
      u[t] = 0;
    }
  }
  return out;
}

std::optional<uint64_t> s_min(const ExponentSet& D, uint64_t p, uint32_t r, uint64_t budget) {
  auto sols = enumerate_solutions(D, p, r, budget);
  if (sols.empty()) return std::nullopt;
  uint64_t best = UINT64_MAX;
  for (const auto& s : sols) best = std::min(best, s.weight());
  return best;
}

Solution shift(const Solution& U) {
  uint64_t pr = checked_pow_u64(U.p, U.r);
  Solution V = U;
  for (auto& x : V.u) {
    if (x == pr - 1 || x == 0) continue;
    x = x * U.p % (pr - 1);
  }
  return V;
}

std::vector<uint64_t> phi0(const ExponentSet& D, const Solution& U) {
  uint64_t M = checked_pow_u64(U.p, U.r) - 1;
  std::vector<uint64_t> e(D.n, 0);
  for (size_t t = 0; t < D.size(); ++t)
    for (uint32_t i = 0; i < D.n; ++i) e[i] += U.u[t] * D.d[t][i];
  for (uint32_t i = 0; i < D.n; ++i) {
    if (M == 0) continue;  // p^r - 1 = 1: phi = the sum itself
    if (e[i] % M != 0 || e[i] == 0) throw input_error("not a valid solution");
    e[i] /= M;
  }
  return e;
}

std::vector<std::vector<uint64_t>> support_map(const ExponentSet& D, const Solution& U) {
  std::vector<std::vector<uint64_t>> out;
  Solution cur = U;
  for (uint32_t k = 0; k < U.r; ++k) {
    out.push_back(phi0(D, cur));
    cur = shift(cur);
  }
  return out;
}

bool is_irreducible(const ExponentSet& D, const Solution& U) {
  auto sup = support_map(D, U);
  std::sort(sup.begin(), sup.end());
  return std::adjacent_find(sup.begin(), sup.end()) == sup.end();
}

Solution glue(const ExponentSet& D, const Solution& U, const Solution& Up) {
  if (U.p != Up.p) throw input_error("glue: mismatched primes");
  if (phi0(D, U) != phi0(D, Up)) throw input_error("glue: supports disagree at index 0");
  uint64_t pr = checked_pow_u64(U.p, U.r, "glue length");
  checked_pow_u64(U.p, U.r + Up.r, "glue length");
  Solution V;
  V.p = U.p;
  V.r = U.r + Up.r;
  V.u.resize(U.u.size());
  for (size_t t = 0; t < U.u.size(); ++t) V.u[t] = pr * Up.u[t] + U.u[t];
  return V;
}

std::optional<uint32_t> SupportGraph::node_index(const std::vector<uint64_t>& e) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), e);
  if (it == nodes.end() || *it != e) return std::nullopt;
  return static_cast<uint32_t>(it - nodes.begin());
}

SupportGraph build_support_graph(const ExponentSet& D, uint64_t p, uint64_t budget) {
  if (D.hyperplane_contained())
    throw input_error("density infinite: D lies in a coordinate hyperplane");
  auto bound = D.component_sum();
  uint64_t node_count = 1;
  for (uint32_t i = 0; i < D.n; ++i) {
    if (bound[i] == 0 || node_count > budget / bound[i] + 1)
      throw budget_error("support graph node box exceeds budget");
    node_count *= bound[i];
  }
  if (node_count > budget) throw budget_error("support graph node box exceeds budget");
  uint64_t digit_count = 1;
  for (size_t t = 0; t < D.size(); ++t) {
    if (digit_count > budget / p + 1) throw budget_error("digit tuple space exceeds budget");
    digit_count *= p;
  }

  SupportGraph g;
  g.p = p;
  g.nodes.reserve(node_count);
  // lex order: last coordinate fastest
  {
    std::vector<uint64_t> e(D.n, 1);
    for (uint64_t k = 0;; ++k) {
      g.nodes.push_back(e);
      if (k + 1 == node_count) break;
      for (size_t i = D.n; i-- > 0;) {
        if (e[i] < bound[i]) {
          ++e[i];
          break;
        }
        e[i] = 1;
      }
    }
  }

  std::map<std::pair<uint32_t, uint32_t>, size_t> edge_of;
  for (uint32_t from = 0; from < g.nodes.size(); ++from) {
    const auto& e = g.nodes[from];
    std::vector<uint8_t> v(D.size(), 0);
    for (uint64_t k = 0;; ++k) {
      // e' = p e - sum d v_d, valid when inside the node box
      std::vector<uint64_t> ep(D.n);
      bool valid = true;
      for (uint32_t i = 0; i < D.n && valid; ++i) {
        uint64_t sub = 0;
        for (size_t t = 0; t < D.size(); ++t) sub += uint64_t(v[t]) * D.d[t][i];
        uint64_t pe = p * e[i];
        if (pe <= sub || pe - sub > bound[i]) {
          valid = false;
        } else {
          ep[i] = pe - sub;
        }
      }
      if (valid) {
        uint32_t to = *g.node_index(ep);
        auto key = std::make_pair(from, to);
        auto it = edge_of.find(key);
        if (it == edge_of.end()) {
          edge_of.emplace(key, g.edges.size());
          g.edges.push_back(SupportGraph::Edge{from, to, UINT64_MAX, {}, false});
          it = edge_of.find(key);
        }
        auto& edge = g.edges[it->second];
        uint64_t w = 0;
        for (uint8_t x : v) w += x;
        edge.weight = std::min(edge.weight, w);
        edge.digits.push_back(v);
      }
      if (k + 1 == digit_count) break;
      for (size_t t = D.size(); t-- > 0;) {
        if (uint64_t(v[t]) + 1 < p) {
          ++v[t];
          break;
        }
        v[t] = 0;
      }
    }
  }
  g.node_critical.assign(g.nodes.size(), 0);
  return g;
}

namespace {

// Tarjan SCC, iterative.
std::vector<uint32_t> scc_of(uint32_t n, const std::vector<std::vector<uint32_t>>& adj) {
  std::vector<uint32_t> comp(n, UINT32_MAX), low(n), num(n, UINT32_MAX), stk;
  std::vector<uint8_t> on(n, 0);
  uint32_t counter = 0, comps = 0;
  std::vector<std::pair<uint32_t, size_t>> call;
  for (uint32_t s = 0; s < n; ++s) {
    if (num[s] != UINT32_MAX) continue;
    call.push_back({s, 0});
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on[v] = 1;
      }
      if (i < adj[v].size()) {
        uint32_t w = adj[v][i++];
        if (num[w] == UINT32_MAX) {
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            uint32_t w = stk.back();
            stk.pop_back();
            on[w] = 0;
            comp[w] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        uint32_t vv = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
      }
    }
  }
  return comp;
}

}  // namespace

MinMeanCycle min_mean_cycle(SupportGraph& g) {
  MinMeanCycle result;
  uint32_t N = static_cast<uint32_t>(g.nodes.size());
  if (N == 0 || g.edges.empty()) return result;

  // Karp with a virtual source connected to every node by weight 0.
  constexpr int64_t INF = std::numeric_limits<int64_t>::max() / 4;
  uint32_t n = N + 1;
  std::vector<std::vector<int64_t>> dist(n + 1, std::vector<int64_t>(N, INF));
  for (uint32_t v = 0; v < N; ++v) dist[1][v] = 0;  // one edge from the source
  for (uint32_t k = 2; k <= n; ++k) {
    for (const auto& e : g.edges) {
      if (dist[k - 1][e.from] == INF) continue;
      int64_t cand = dist[k - 1][e.from] + static_cast<int64_t>(e.weight);
      dist[k][e.to] = std::min(dist[k][e.to], cand);
    }
  }
  bool found = false;
  mpq_class best;
  for (uint32_t v = 0; v < N; ++v) {
    if (dist[n][v] == INF) continue;
    bool have = false;
    mpq_class worst;
    for (uint32_t k = 0; k < n; ++k) {
      if (dist[k][v] == INF) continue;
      mpq_class ratio(dist[n][v] - dist[k][v], n - k);
      ratio.canonicalize();
      if (!have || ratio > worst) {
        worst = ratio;
        have = true;
      }
    }
    if (have && (!found || worst < best)) {
      best = worst;
      found = true;
    }
  }
  if (!found) return result;  // acyclic
  result.has_cycle = true;
  result.mu = best;

  // Criticality: scale to integer weights with zero minimum cycle mean,
  // find feasible potentials (shortest paths from the source), keep tight
  // edges, and mark SCCs that contain a cycle.
  int64_t num = mpz_get_si(best.get_num().get_mpz_t());
  int64_t den = mpz_get_si(best.get_den().get_mpz_t());
  auto scaled = [&](const SupportGraph::Edge& e) {
    return den * static_cast<int64_t>(e.weight) - num;
  };
  std::vector<int64_t> phi(N, 0);  // source potentials (source->v edge weight 0)
  for (uint32_t it = 0; it < N; ++it) {
    bool changed = false;
    for (const auto& e : g.edges) {
      int64_t cand = phi[e.from] + scaled(e);
      if (cand < phi[e.to]) {
        phi[e.to] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::vector<uint32_t>> tight(N);
  std::vector<size_t> tight_edges;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (phi[e.from] + scaled(e) == phi[e.to]) {
      tight[e.from].push_back(e.to);
      tight_edges.push_back(i);
    }
  }
  auto comp = scc_of(N, tight);
  // an SCC is critical when it contains a tight edge inside it
  std::vector<uint8_t> scc_critical(N, 0);
  for (size_t i : tight_edges) {
    const auto& e = g.edges[i];
    if (comp[e.from] == comp[e.to]) scc_critical[comp[e.from]] = 1;
  }
  for (uint32_t v = 0; v < N; ++v) g.node_critical[v] = scc_critical[comp[v]];
  for (size_t i : tight_edges) {
    auto& e = g.edges[i];
    if (comp[e.from] == comp[e.to] && scc_critical[comp[e.from]]) e.critical = true;
  }
  return result;
}

Density density(const ExponentSet& D, uint64_t p, uint64_t budget) {
  if (D.hyperplane_contained()) return Density{true, mpq_class()};
  SupportGraph g = build_support_graph(D, p, budget);
  auto mmc = min_mean_cycle(g);
  if (!mmc.has_cycle) return Density{true, mpq_class()};
  mpq_class delta = mmc.mu / mpq_class(static_cast<long>(p - 1));
  delta.canonicalize();
  return Density{false, delta};
}

SupportData support_data(const ExponentSet& D, uint64_t p, uint64_t budget) {
  if (D.hyperplane_contained())
    throw input_error("density infinite: D lies in a coordinate hyperplane");
  SupportData out;
  out.graph = build_support_graph(D, p, budget);
  auto mmc = min_mean_cycle(out.graph);
  if (!mmc.has_cycle) throw input_error("density infinite: no cycle in the support graph");
  mpq_class delta = mmc.mu / mpq_class(static_cast<long>(p - 1));
  delta.canonicalize();
  out.delta = Density{false, delta};
  for (uint32_t v = 0; v < out.graph.nodes.size(); ++v)
    if (out.graph.node_critical[v]) out.support.push_back(out.graph.nodes[v]);
  for (const auto& e : out.graph.edges) {
    if (!e.critical) continue;
    SupportData::DigitSet ds;
    ds.e = out.graph.nodes[e.from];
    ds.e_prime = out.graph.nodes[e.to];
    ds.weight = e.weight;
    for (const auto& v : e.digits) {
      uint64_t w = 0;
      for (uint8_t x : v) w += x;
      if (w == e.weight) ds.digits.push_back(v);
    }
    out.digit_sets.push_back(std::move(ds));
  }
  return out;
}

std::vector<std::vector<uint64_t>> minimal_support(const ExponentSet& D, uint64_t p,
                                                   uint64_t budget) {
  return support_data(D, p, budget).support;
}

std::map<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>,
         std::vector<std::vector<uint8_t>>>
digit_sets_by_enumeration(const ExponentSet& D, uint64_t p, uint32_t r_max,
                          const mpq_class& delta, uint64_t budget) {
  std::map<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>,
           std::vector<std::vector<uint8_t>>>
      out;
  for (uint32_t r = 1; r <= r_max; ++r) {
    for (const auto& U : enumerate_solutions(D, p, r, budget)) {
      mpq_class dens(static_cast<long>(U.weight()));
      dens /= mpq_class(static_cast<long>((p - 1) * r));
      dens.canonicalize();
      if (dens != delta) continue;
      if (!is_irreducible(D, U)) continue;
      auto sup = support_map(D, U);
      std::vector<uint8_t> psi(D.size());
      for (size_t t = 0; t < D.size(); ++t) psi[t] = static_cast<uint8_t>(U.u[t] % p);
      auto key = std::make_pair(sup[r - 1], sup[0]);  // (phi(-1), phi(0))
      auto& list = out[key];
      if (std::find(list.begin(), list.end(), psi) == list.end()) list.push_back(psi);
    }
  }
  for (auto& [k, list] : out) std::sort(list.begin(), list.end());
  return out;
}

}  // namespace lcong::density
