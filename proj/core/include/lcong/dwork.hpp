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

#include "lcong/density.hpp"
#include "lcong/ff.hpp"
#include "lcong/padic.hpp"
#include "lcong/series.hpp"

namespace lcong::dwork {

/// Teichmüller lifts gamma_d of the coefficients of f, aligned with D.d
/// (missing terms of f lift to 0).
struct GammaCtx {
  padic::RamPtr ring;
  density::ExponentSet D;
  std::vector<padic::OmElem> gamma;

  uint64_t q() const { return ring->om.q; }
  uint32_t n() const { return D.n; }
};

GammaCtx make_gamma_ctx(padic::RamPtr ring, const density::ExponentSet& D,
                        const ff::SparsePoly& f);

/// Square matrix over O_m with support-point row/column labels.
struct MatrixOm {
  uint32_t n = 0;
  std::vector<std::vector<uint64_t>> labels;
  std::vector<padic::OmElem> a;  // row-major

  const padic::OmElem& at(uint32_t i, uint32_t j) const { return a[size_t(i) * n + j]; }
  padic::OmElem& at(uint32_t i, uint32_t j) { return a[size_t(i) * n + j]; }
};

/// m_{e,e'} = sum over V(e,e') of prod_d gamma_d^{v_d} / v_d!, indexed by the
/// minimal support.  Entries are 0 when V(e,e') is empty (non-critical pair).
MatrixOm build_M(const GammaCtx& g, const density::SupportData& sd);

/// tau^{m-1}(M) ... tau(M) M, highest twist leftmost.
MatrixOm twisted_product(const padic::UnramCtx& om, const MatrixOm& M, uint32_t m);

/// Square matrix over the ramified ring.
struct MatrixP {
  uint32_t n = 0;
  std::vector<padic::PadicScalar> a;

  const padic::PadicScalar& at(uint32_t i, uint32_t j) const { return a[size_t(i) * n + j]; }
  padic::PadicScalar& at(uint32_t i, uint32_t j) { return a[size_t(i) * n + j]; }
};

MatrixP lift_matrix(const padic::RamPtr& ring, const MatrixOm& M);

/// det(I - T A) up to degree min(n, K): truncated Berkowitz (Samuelson
/// recurrence), division-free.
padic::PadicSeries charpoly_divfree(const padic::RamPtr& ring, const MatrixP& A, uint32_t K);

/// Dense table of series coefficients f^{(mm)}_i of
/// prod_{d in D} theta_mm(gamma_d X^d) over the box 0 <= i <= bound.
class FmTable {
 public:
  FmTable(const GammaCtx& g, std::vector<uint64_t> bound, uint32_t mm);

  /// f_i; zero outside the box or for negative indices.
  const padic::PadicScalar& at(const std::vector<int64_t>& i) const;

  const std::vector<uint64_t>& bound() const { return bound_; }

 private:
  std::vector<uint64_t> bound_;
  std::vector<uint64_t> stride_;
  std::vector<padic::PadicScalar> val_;
  padic::PadicScalar zero_;
};

/// Truncated operator matrix over indices with support exactly J (indices
/// run over 1..box per J-coordinate): entries f^{(mm)}_{q i - j} with
/// q = p^mm.
struct TruncMatrix {
  std::vector<std::vector<int64_t>> labels;  // full n-dimensional indices
  MatrixP A;
};

TruncMatrix build_A_matrix(const GammaCtx& g, const FmTable& fm,
                           const std::vector<uint32_t>& J,
                           const std::vector<uint64_t>& box, uint32_t mm);

/// Variant over indices with support containing I (coords outside I range
/// from 0).
TruncMatrix build_A_superset_matrix(const GammaCtx& g, const FmTable& fm,
                                    const std::vector<uint32_t>& I,
                                    const std::vector<uint64_t>& box, uint32_t mm);

struct FredholmOptions {
  uint32_t K_max = 4;
  /// Certification window in v_w units: every excluded row must have all
  /// entry valuations strictly above this.
  int64_t window = 0;
  uint64_t budget = density::kDefaultBudget;
};

struct FredholmResult {
  padic::PadicSeries det;
  std::vector<uint64_t> box;  // certified per-J-coordinate index bound
  bool trivial = false;       // D_J degenerate; det = 1 exactly
};

/// det(I - T A_J) truncated to K_max with a certified index bound: the
/// digit-weight DP w(k) = min sum s_p(u_d) over sum u_d d = k must push all
/// shell rows above the window.  The heuristic shell is [box, 2 box]; the
/// exact L-series oracle cross-checks it downstream.
FredholmResult fredholm_truncated(const GammaCtx& g, const std::vector<uint32_t>& J,
                                  const FredholmOptions& opt);

/// L-series assembled from the truncated Fredholm determinants:
/// L = prod_J prod_{k<=|J|} det(I - q^{n-k} T A_J)^{(-1)^{k+1} binom(|J|,k)}.
padic::PadicSeries l_from_fredholm(const GammaCtx& g, const FredholmOptions& opt);

/// Digit-weight DP on D (ambient coordinates): w[k] = min sum s_p(u_d) with
/// sum u_d d = k, UINT64_MAX when no decomposition exists.
std::vector<uint64_t> digit_weight_dp(const density::ExponentSet& D, uint64_t p,
                                      const std::vector<uint64_t>& bound,
                                      std::vector<uint64_t>& stride_out);

/// Compare det A[F] computed directly with the cyclic-minor decomposition;
/// |F| <= 5.
bool cyclic_minor_check(const GammaCtx& g, const FmTable& fm,
                        const std::vector<std::vector<int64_t>>& F, uint32_t mm);

enum class SignConvention { proof, literal };

struct QualifyingSubset {
  std::vector<uint32_t> I;     // 0-based coordinates, ascending
  density::SupportData sd;     // support data of D_I in its own coordinates
  int32_t exponent = 1;        // (-1)^{#I+1}
};

/// Subsets I with delta_p(D_I) + n - #I = delta_p(D), each with its density
/// pipeline output.
std::vector<QualifyingSubset> qualifying_subsets(const density::ExponentSet& D, uint64_t p,
                                                 const mpq_class& delta, uint64_t budget);

struct RhsOptions {
  uint32_t K_max = 4;
  SignConvention sign = SignConvention::proof;
  bool empty_correction = false;  // multiply by (1 - q^n T)^{-1}
};

/// det(I_{N_I} - q^{n-#I} pi^{m(p-1)delta_I} T M(Gamma_I)^{tau^{m-1}}...M(Gamma_I)),
/// the proof-side scaling; the literal convention multiplies the scalar by
/// (-1)^{m(n-#I)}.
padic::PadicSeries rhs_factor(const GammaCtx& g, const QualifyingSubset& Q,
                              const RhsOptions& opt);

/// Product of rhs_factor^{(-1)^{#I+1}} over qualifying subsets, with the
/// optional (1 - q^n T)^{-1} boundary factor.
padic::PadicSeries rhs_assemble(const GammaCtx& g, const std::vector<QualifyingSubset>& subsets,
                                const RhsOptions& opt);

}  // namespace lcong::dwork
