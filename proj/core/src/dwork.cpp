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

#include "lcong/dwork.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

#include "lcong/nt.hpp"

namespace lcong::dwork {

using padic::OmElem;
using padic::PadicScalar;
using padic::PadicSeries;

GammaCtx make_gamma_ctx(padic::RamPtr ring, const density::ExponentSet& D,
                        const ff::SparsePoly& f) {
  GammaCtx g;
  g.ring = std::move(ring);
  g.D = D;
  g.gamma.reserve(D.size());
  for (const auto& d : D.d) {
    auto it = std::find_if(f.terms.begin(), f.terms.end(),
                           [&](const auto& t) { return t.first == d; });
    if (it == f.terms.end()) {
      g.gamma.push_back(g.ring->om.zero());
    } else {
      g.gamma.push_back(padic::teichmuller(g.ring->om, it->second));
    }
  }
  return g;
}

MatrixOm build_M(const GammaCtx& g, const density::SupportData& sd) {
  const auto& om = g.ring->om;
  MatrixOm M;
  M.n = static_cast<uint32_t>(sd.support.size());
  M.labels = sd.support;
  M.a.assign(size_t(M.n) * M.n, om.zero());
  auto index_of = [&](const std::vector<uint64_t>& e) {
    auto it = std::lower_bound(sd.support.begin(), sd.support.end(), e);
    return static_cast<uint32_t>(it - sd.support.begin());
  };
  for (const auto& ds : sd.digit_sets) {
    uint32_t i = index_of(ds.e), j = index_of(ds.e_prime);
    OmElem acc = om.zero();
    for (const auto& v : ds.digits) {
      OmElem term = om.one();
      uint64_t fact = 1;
      for (size_t t = 0; t < v.size(); ++t) {
        if (v[t]) term = om.mul(term, om.pow(g.gamma[t], v[t]));
        for (uint8_t x = 2; x <= v[t]; ++x) fact = mulmod(fact, x, om.pK);
      }
      // v_d <= p-1, so the factorial is a p-adic unit
      term = om.scalar_mul(term, om.inv(om.from_int(static_cast<int64_t>(fact)))[0]);
      acc = om.add(acc, term);
    }
    M.at(i, j) = acc;
  }
  return M;
}

MatrixOm twisted_product(const padic::UnramCtx& om, const MatrixOm& M, uint32_t m) {
  auto twist = [&](const MatrixOm& X, uint32_t j) {
    MatrixOm Y = X;
    for (auto& e : Y.a) e = om.frobenius(e, j);
    return Y;
  };
  MatrixOm acc = twist(M, m - 1);
  for (uint32_t j = m - 1; j-- > 0;) {
    MatrixOm B = twist(M, j);
    MatrixOm C;
    C.n = M.n;
    C.labels = M.labels;
    C.a.assign(size_t(M.n) * M.n, om.zero());
    for (uint32_t i = 0; i < M.n; ++i)
      for (uint32_t k = 0; k < M.n; ++k) {
        if (om.is_zero(acc.at(i, k))) continue;
        for (uint32_t l = 0; l < M.n; ++l)
          C.at(i, l) = om.add(C.at(i, l), om.mul(acc.at(i, k), B.at(k, l)));
      }
    acc = std::move(C);
  }
  return acc;
}

MatrixP lift_matrix(const padic::RamPtr& ring, const MatrixOm& M) {
  MatrixP A;
  A.n = M.n;
  A.a.reserve(M.a.size());
  for (const auto& e : M.a) A.a.push_back(ring->from_om(e));
  return A;
}

PadicSeries charpoly_divfree(const padic::RamPtr& ring, const MatrixP& A, uint32_t K) {
  PadicSeries out = PadicSeries::one(ring, K);
  if (A.n == 0) return out;
  uint32_t cap = std::min(A.n, K);

  // Samuelson-Berkowitz: q holds the characteristic polynomial of the
  // leading r x r block, descending coefficients, truncated to cap+1 terms.
  std::vector<PadicScalar> q = {ring->one(), -A.at(0, 0)};
  for (uint32_t r = 1; r < A.n; ++r) {
    uint32_t len = std::min(r + 1, cap) + 1;
    // c[0] = 1, c[1] = -a_{rr}, c[t] = -(R A_r^{t-2} S)
    std::vector<PadicScalar> c(len, ring->zero());
    c[0] = ring->one();
    if (len > 1) c[1] = -A.at(r, r);
    if (len > 2) {
      std::vector<PadicScalar> w(r);
      for (uint32_t i = 0; i < r; ++i) w[i] = A.at(i, r);  // S
      for (uint32_t t = 2; t < len; ++t) {
        PadicScalar dot = ring->zero();
        for (uint32_t i = 0; i < r; ++i) dot = dot + A.at(r, i) * w[i];
        c[t] = -dot;
        if (t + 1 < len) {
          std::vector<PadicScalar> w2(r, ring->zero());
          for (uint32_t i = 0; i < r; ++i) {
            for (uint32_t j2 = 0; j2 < r; ++j2) w2[i] = w2[i] + A.at(i, j2) * w[j2];
          }
          w = std::move(w2);
        }
      }
    }
    std::vector<PadicScalar> nq(len, ring->zero());
    for (uint32_t t = 0; t < len; ++t)
      for (uint32_t j2 = 0; j2 <= t && j2 < q.size(); ++j2)
        nq[t] = nq[t] + c[t - j2] * q[j2];
    q = std::move(nq);
  }
  // det(I - T A) = T^n charpoly(1/T): the descending coefficients are read
  // off as ascending T-coefficients.
  for (uint32_t t = 0; t < q.size() && t <= K; ++t) out.a[t] = q[t];
  return out;
}

// --- series coefficient tables ---

FmTable::FmTable(const GammaCtx& g, std::vector<uint64_t> bound, uint32_t mm)
    : bound_(std::move(bound)), zero_(g.ring->zero()) {
  const auto& om = g.ring->om;
  uint32_t n = g.n();
  stride_.assign(n, 1);
  uint64_t total = 1;
  for (uint32_t i = n; i-- > 0;) {
    stride_[i] = total;
    total *= bound_[i] + 1;
  }
  val_.assign(total, g.ring->zero());

  // per-exponent caps and the lambda table
  std::vector<uint64_t> cap(g.D.size(), 0);
  uint64_t lam_max = 0;
  for (size_t t = 0; t < g.D.size(); ++t) {
    uint64_t c = UINT64_MAX;
    for (uint32_t i = 0; i < n; ++i)
      if (g.D.d[t][i]) c = std::min(c, bound_[i] / g.D.d[t][i]);
    if (c == UINT64_MAX) throw input_error("zero exponent vector is unsupported");
    cap[t] = c;
    lam_max = std::max(lam_max, c);
  }
  std::vector<PadicScalar> lam;
  lam.reserve(lam_max + 1);
  for (uint64_t u = 0; u <= lam_max; ++u)
    lam.push_back(padic::reduce_pi_rational(g.ring, padic::lambda_exact(om.p, mm, u)));

  // per-term factors lambda_u * gamma^u
  std::vector<std::vector<PadicScalar>> fac(g.D.size());
  for (size_t t = 0; t < g.D.size(); ++t) {
    fac[t].reserve(cap[t] + 1);
    OmElem gp = om.one();
    for (uint64_t u = 0; u <= cap[t]; ++u) {
      fac[t].push_back(lam[u] * g.ring->from_om(gp));
      if (u < cap[t]) gp = om.mul(gp, g.gamma[t]);
    }
  }

  // DFS over tuples (u_d) with componentwise sum inside the box
  std::vector<uint64_t> idx(n, 0);
  std::function<void(size_t, const PadicScalar&)> rec = [&](size_t t, const PadicScalar& prod) {
    if (t == g.D.size()) {
      uint64_t flat = 0;
      for (uint32_t i = 0; i < n; ++i) flat += idx[i] * stride_[i];
      val_[flat] = val_[flat] + prod;
      return;
    }
    for (uint64_t u = 0;; ++u) {
      bool fits = u <= cap[t];
      for (uint32_t i = 0; i < n && fits; ++i)
        if (idx[i] + u * g.D.d[t][i] > bound_[i]) fits = false;
      if (!fits) break;
      for (uint32_t i = 0; i < n; ++i) idx[i] += u * g.D.d[t][i];
      if (u == 0) {
        rec(t + 1, prod);
      } else {
        rec(t + 1, prod * fac[t][u]);
      }
      for (uint32_t i = 0; i < n; ++i) idx[i] -= u * g.D.d[t][i];
    }
  };
  rec(0, g.ring->one());
}

const PadicScalar& FmTable::at(const std::vector<int64_t>& i) const {
  uint64_t flat = 0;
  for (size_t t = 0; t < i.size(); ++t) {
    if (i[t] < 0 || static_cast<uint64_t>(i[t]) > bound_[t]) return zero_;
    flat += static_cast<uint64_t>(i[t]) * stride_[t];
  }
  return val_[flat];
}

namespace {

// enumerate index vectors over J coordinates, values 1..box, other coords 0
std::vector<std::vector<int64_t>> support_box_indices(uint32_t n, const std::vector<uint32_t>& J,
                                                      const std::vector<uint64_t>& box) {
  std::vector<std::vector<int64_t>> out;
  std::vector<int64_t> cur(n, 0);
  std::function<void(size_t)> rec = [&](size_t t) {
    if (t == J.size()) {
      out.push_back(cur);
      return;
    }
    for (uint64_t v = 1; v <= box[t]; ++v) {
      cur[J[t]] = static_cast<int64_t>(v);
      rec(t + 1);
    }
    cur[J[t]] = 0;
  };
  rec(0);
  return out;
}

}  // namespace

TruncMatrix build_A_matrix(const GammaCtx& g, const FmTable& fm, const std::vector<uint32_t>& J,
                           const std::vector<uint64_t>& box, uint32_t mm) {
  uint64_t q = checked_pow_u64(g.ring->om.p, mm);
  for (size_t t = 0; t < J.size(); ++t)
    if (fm.bound()[J[t]] + 1 < q * box[t])
      throw input_error("fm table too small for the requested truncation");
  TruncMatrix tm;
  tm.labels = support_box_indices(g.n(), J, box);
  uint32_t N = static_cast<uint32_t>(tm.labels.size());
  tm.A.n = N;
  tm.A.a.reserve(size_t(N) * N);
  std::vector<int64_t> diff(g.n());
  for (uint32_t i = 0; i < N; ++i)
    for (uint32_t j = 0; j < N; ++j) {
      for (uint32_t t = 0; t < g.n(); ++t)
        diff[t] = static_cast<int64_t>(q) * tm.labels[i][t] - tm.labels[j][t];
      tm.A.a.push_back(fm.at(diff));
    }
  return tm;
}

TruncMatrix build_A_superset_matrix(const GammaCtx& g, const FmTable& fm,
                                    const std::vector<uint32_t>& I,
                                    const std::vector<uint64_t>& box, uint32_t mm) {
  uint64_t q = checked_pow_u64(g.ring->om.p, mm);
  TruncMatrix tm;
  // coords in I range 1..box, the rest 0..box
  std::vector<int64_t> cur(g.n(), 0);
  std::function<void(uint32_t)> rec = [&](uint32_t t) {
    if (t == g.n()) {
      tm.labels.push_back(cur);
      return;
    }
    bool inI = std::find(I.begin(), I.end(), t) != I.end();
    for (uint64_t v = inI ? 1 : 0; v <= box[t]; ++v) {
      cur[t] = static_cast<int64_t>(v);
      rec(t + 1);
    }
    cur[t] = 0;
  };
  rec(0);
  uint32_t N = static_cast<uint32_t>(tm.labels.size());
  tm.A.n = N;
  tm.A.a.reserve(size_t(N) * N);
  std::vector<int64_t> diff(g.n());
  for (uint32_t i = 0; i < N; ++i)
    for (uint32_t j = 0; j < N; ++j) {
      for (uint32_t t = 0; t < g.n(); ++t)
        diff[t] = static_cast<int64_t>(q) * tm.labels[i][t] - tm.labels[j][t];
      tm.A.a.push_back(fm.at(diff));
    }
  return tm;
}

std::vector<uint64_t> digit_weight_dp(const density::ExponentSet& D, uint64_t p,
                                      const std::vector<uint64_t>& bound,
                                      std::vector<uint64_t>& stride_out) {
  uint32_t n = D.n;
  stride_out.assign(n, 1);
  uint64_t total = 1;
  for (uint32_t i = n; i-- > 0;) {
    stride_out[i] = total;
    total *= bound[i] + 1;
  }
  std::vector<uint64_t> w(total, UINT64_MAX);
  w[0] = 0;
  // ascending flat order: predecessors k - u*d always have smaller flat index
  std::vector<uint64_t> k(n, 0);
  for (uint64_t flat = 0; flat < total; ++flat) {
    if (w[flat] != UINT64_MAX) {
      for (size_t t = 0; t < D.size(); ++t) {
        uint64_t step = 0;
        for (uint32_t i = 0; i < n; ++i) step += D.d[t][i] * stride_out[i];
        if (step == 0) continue;
        uint64_t f2 = flat;
        std::vector<uint64_t> k2 = k;
        for (uint64_t u = 1;; ++u) {
          bool ok = true;
          for (uint32_t i = 0; i < n && ok; ++i)
            if (k2[i] + D.d[t][i] > bound[i]) ok = false;
          if (!ok) break;
          for (uint32_t i = 0; i < n; ++i) k2[i] += D.d[t][i];
          f2 += step;
          uint64_t cand = w[flat] + p_weight(u, p);
          if (cand < w[f2]) w[f2] = cand;
        }
      }
    }
    // odometer
    for (uint32_t i = n; i-- > 0;) {
      if (k[i] < bound[i]) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
  }
  return w;
}

namespace {

FredholmResult fredholm_trivial(const GammaCtx& g, uint32_t K_max) {
  FredholmResult r;
  r.det = PadicSeries::one(g.ring, K_max);
  r.trivial = true;
  return r;
}

}  // namespace

FredholmResult fredholm_truncated(const GammaCtx& g, const std::vector<uint32_t>& J,
                                  const FredholmOptions& opt) {
  const auto& ring = g.ring;
  uint64_t q = ring->om.q;
  if (J.empty()) {
    // A_empty is the 1x1 matrix [1]
    FredholmResult r;
    r.det = PadicSeries::one(ring, opt.K_max);
    if (opt.K_max >= 1) r.det.a[1] = -ring->one();
    return r;
  }
  auto DJ = g.D.restrict_to(J);
  if (DJ.d.empty() || DJ.hyperplane_contained()) return fredholm_trivial(g, opt.K_max);

  // Grow the box until the shell certification passes.
  uint32_t nj = static_cast<uint32_t>(J.size());
  uint64_t B = 2;
  for (;; ++B) {
    uint64_t N = 1;
    for (uint32_t t = 0; t < nj; ++t) N *= B;
    if (N * N > opt.budget)
      throw budget_error("fredholm truncation: no certified index bound within budget (tried up to " +
                         std::to_string(B) + ")");
    // weight DP over the projected set, up to 2qB per coordinate
    std::vector<uint64_t> wbound(nj, 2 * q * B);
    std::vector<uint64_t> stride;
    auto w = digit_weight_dp(DJ, ring->om.p, wbound, stride);
    auto wval = [&](const std::vector<int64_t>& k) -> uint64_t {
      uint64_t flat = 0;
      for (uint32_t t = 0; t < nj; ++t) {
        if (k[t] < 0 || static_cast<uint64_t>(k[t]) > wbound[t]) return UINT64_MAX;
        flat += static_cast<uint64_t>(k[t]) * stride[t];
      }
      return w[flat];
    };
    // shell rows: indices in [1, 2B]^J not all <= B
    bool ok = true;
    std::vector<int64_t> i(nj, 1), k(nj);
    while (ok) {
      bool inside = true;
      for (uint32_t t = 0; t < nj; ++t)
        if (i[t] > static_cast<int64_t>(B)) inside = false;
      if (!inside) {
        uint64_t rowmin = UINT64_MAX;
        std::vector<int64_t> j(nj, 1);
        while (true) {
          for (uint32_t t = 0; t < nj; ++t) k[t] = static_cast<int64_t>(q) * i[t] - j[t];
          uint64_t wv = wval(k);
          if (wv != UINT64_MAX) rowmin = std::min(rowmin, wv);
          uint32_t t = nj;
          while (t-- > 0) {
            if (j[t] < static_cast<int64_t>(B)) {
              ++j[t];
              break;
            }
            j[t] = 1;
            if (t == 0) goto rowdone;
          }
        }
      rowdone:
        if (rowmin != UINT64_MAX &&
            static_cast<int64_t>(rowmin) * ring->v <= opt.window) {
          ok = false;
        }
      }
      uint32_t t = nj;
      while (t-- > 0) {
        if (i[t] < static_cast<int64_t>(2 * B)) {
          ++i[t];
          break;
        }
        i[t] = 1;
        if (t == 0) goto shelldone;
      }
    }
  shelldone:
    if (!ok) continue;

    // certified: build the truncated matrix and its determinant
    std::vector<uint64_t> fmbound(g.n(), 0);
    for (uint32_t t = 0; t < nj; ++t) fmbound[J[t]] = q * B;
    FmTable fm(g, fmbound, ring->om.m);
    std::vector<uint64_t> box(nj, B);
    auto tm = build_A_matrix(g, fm, J, box, ring->om.m);
    FredholmResult r;
    r.det = charpoly_divfree(ring, tm.A, opt.K_max);
    r.box = box;
    return r;
  }
}

PadicSeries l_from_fredholm(const GammaCtx& g, const FredholmOptions& opt) {
  const auto& ring = g.ring;
  uint32_t n = g.n();
  uint64_t q = ring->om.q;
  PadicSeries L = PadicSeries::one(ring, opt.K_max);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<uint32_t> J;
    for (uint32_t t = 0; t < n; ++t)
      if (mask & (1u << t)) J.push_back(t);
    auto fr = fredholm_truncated(g, J, opt);
    if (fr.trivial) continue;
    uint32_t sz = static_cast<uint32_t>(J.size());
    for (uint32_t k = 0; k <= sz; ++k) {
      int64_t ex = static_cast<int64_t>(binom_u64(sz, k));
      if (k % 2 == 0) ex = -ex;  // (-1)^{k+1}
      uint64_t scale = checked_pow_u64(q, n - k);
      L = L * fr.det.scale_T(ring->from_int(static_cast<int64_t>(scale))).pow(ex);
    }
  }
  return L;
}

namespace {

PadicScalar direct_det(const padic::RamPtr& ring, const GammaCtx& g, const FmTable& fm,
                       const std::vector<std::vector<int64_t>>& F, uint64_t q) {
  size_t s = F.size();
  std::vector<uint32_t> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  PadicScalar acc = ring->zero();
  std::vector<int64_t> diff(g.n());
  do {
    int inv = 0;
    for (size_t i = 0; i < s; ++i)
      for (size_t j = i + 1; j < s; ++j)
        if (perm[i] > perm[j]) ++inv;
    PadicScalar term = ring->one();
    for (size_t i = 0; i < s; ++i) {
      for (uint32_t t = 0; t < g.n(); ++t)
        diff[t] = static_cast<int64_t>(q) * F[i][t] - F[perm[i]][t];
      term = term * fm.at(diff);
    }
    acc = inv % 2 ? acc - term : acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// sum over partitions of {0..s-1} into min-led cycles of the product of
// cyclic minors
PadicScalar cyclic_det(const padic::RamPtr& ring, const GammaCtx& g, const FmTable& fm,
                       const std::vector<std::vector<int64_t>>& F, uint64_t q) {
  size_t s = F.size();
  std::vector<int64_t> diff(g.n());
  auto entry = [&](size_t i, size_t j) {
    for (uint32_t t = 0; t < g.n(); ++t)
      diff[t] = static_cast<int64_t>(q) * F[i][t] - F[j][t];
    return fm.at(diff);
  };
  PadicScalar total = ring->zero();
  std::vector<uint8_t> used(s, 0);
  std::vector<size_t> cycle;
  // rec over partitions: current cycle open at `cycle`, started at its min
  std::function<void(const PadicScalar&)> close_or_extend = [&](const PadicScalar& prod) {
    // try closing the cycle
    {
      PadicScalar mtheta = ring->one();
      for (size_t i = 0; i < cycle.size(); ++i)
        mtheta = mtheta * entry(cycle[i], cycle[(i + 1) % cycle.size()]);
      if (cycle.size() % 2 == 0) mtheta = -mtheta;  // (-1)^{l-1}
      PadicScalar nprod = prod * mtheta;
      // start the next cycle at the least unused element
      size_t start = s;
      for (size_t i = 0; i < s; ++i)
        if (!used[i]) {
          start = i;
          break;
        }
      if (start == s) {
        total = total + nprod;
      } else {
        used[start] = 1;
        auto saved = cycle;
        cycle = {start};
        close_or_extend(nprod);
        cycle = saved;
        used[start] = 0;
      }
    }
    // or extend with any unused element
    for (size_t i = cycle.front() + 1; i < s; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      cycle.push_back(i);
      close_or_extend(prod);
      cycle.pop_back();
      used[i] = 0;
    }
  };
  used[0] = 1;
  cycle = {0};
  close_or_extend(ring->one());
  return total;
}

}  // namespace

bool cyclic_minor_check(const GammaCtx& g, const FmTable& fm,
                        const std::vector<std::vector<int64_t>>& F, uint32_t mm) {
  if (F.size() > 5) throw input_error("cyclic minor check limited to |F| <= 5");
  uint64_t q = checked_pow_u64(g.ring->om.p, mm);
  auto lhs = direct_det(g.ring, g, fm, F, q);
  auto rhs = cyclic_det(g.ring, g, fm, F, q);
  return (lhs - rhs).is_zero();
}

std::vector<QualifyingSubset> qualifying_subsets(const density::ExponentSet& D, uint64_t p,
                                                 const mpq_class& delta, uint64_t budget) {
  std::vector<QualifyingSubset> out;
  uint32_t n = D.n;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<uint32_t> I;
    for (uint32_t t = 0; t < n; ++t)
      if (mask & (1u << t)) I.push_back(t);
    auto DI = D.restrict_to(I);
    if (DI.d.empty() || DI.hyperplane_contained()) continue;  // delta_I infinite
    auto sd = density::support_data(DI, p, budget);
    mpq_class lhs = sd.delta.value + mpq_class(static_cast<long>(n - I.size()));
    if (lhs != delta) continue;
    QualifyingSubset Q;
    Q.I = I;
    Q.sd = std::move(sd);
    Q.exponent = (I.size() % 2 == 1) ? 1 : -1;  // (-1)^{#I+1}
    out.push_back(std::move(Q));
  }
  return out;
}

PadicSeries rhs_factor(const GammaCtx& g, const QualifyingSubset& Q, const RhsOptions& opt) {
  const auto& ring = g.ring;
  uint32_t m = ring->om.m;
  uint32_t n = g.n();
  uint32_t k = static_cast<uint32_t>(Q.I.size());

  // gamma restricted to D_I (labels of Q.sd live in I-coordinates)
  GammaCtx gI;
  gI.ring = ring;
  gI.D = g.D.restrict_to(Q.I);
  gI.gamma.reserve(gI.D.size());
  for (const auto& dproj : gI.D.d) {
    std::vector<uint32_t> full(n, 0);
    for (uint32_t t = 0; t < k; ++t) full[Q.I[t]] = dproj[t];
    auto it = std::lower_bound(g.D.d.begin(), g.D.d.end(), full);
    gI.gamma.push_back(g.gamma[it - g.D.d.begin()]);
  }

  MatrixOm M = build_M(gI, Q.sd);
  MatrixOm Mtw = twisted_product(ring->om, M, m);
  PadicSeries det = charpoly_divfree(ring, lift_matrix(ring, Mtw), opt.K_max);

  // scalar q^{n-#I} pi^{m(p-1)delta_I}; the pi power is w^{m(p-1)delta_I v}
  mpq_class wexp_q = Q.sd.delta.value * static_cast<long>(ring->om.p - 1) *
                     static_cast<long>(m) * static_cast<long>(ring->v);
  wexp_q.canonicalize();
  if (wexp_q.get_den() != 1)
    throw input_error("ramification context mismatch: pi^{m(p-1)delta_I} is fractional here");
  uint64_t wexp = mpz_get_ui(wexp_q.get_num().get_mpz_t());
  PadicScalar s = ring->from_int(static_cast<int64_t>(checked_pow_u64(ring->om.q, n - k))) *
                  ring->w_pow(wexp);
  if (opt.sign == SignConvention::literal && (uint64_t(m) * (n - k)) % 2 == 1) s = -s;
  return det.scale_T(s);
}

PadicSeries rhs_assemble(const GammaCtx& g, const std::vector<QualifyingSubset>& subsets,
                         const RhsOptions& opt) {
  const auto& ring = g.ring;
  PadicSeries acc = PadicSeries::one(ring, opt.K_max);
  for (const auto& Q : subsets) acc = acc * rhs_factor(g, Q, opt).pow(Q.exponent);
  if (opt.empty_correction) {
    PadicSeries corr = PadicSeries::one(ring, opt.K_max);
    if (opt.K_max >= 1) {
      uint64_t qn = checked_pow_u64(ring->om.q, g.n());
      corr.a[1] = ring->from_int(-static_cast<int64_t>(qn));
    }
    acc = acc * corr.inverse();
  }
  return acc;
}

}  // namespace lcong::dwork
