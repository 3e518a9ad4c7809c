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
#include <memory>
#include <vector>

#include "lcong/errors.hpp"
#include "lcong/ff.hpp"

namespace lcong::padic {

/// Element of O_m at working precision: residue polynomial of degree < m
/// with coefficients mod p^K.
using OmElem = std::vector<uint64_t>;

/// The unramified extension O_m of Z_p at precision p^K, presented with a
/// Teichmüller modulus: a monic degree-m divisor of x^{q-1} - 1 over Z/p^K
/// lifting the lex-least irreducible polynomial of F_q.  On this
/// presentation the Frobenius tau is exactly x -> x^p.
class UnramCtx {
 public:
  UnramCtx(uint64_t p, uint32_t m, uint32_t K);

  uint64_t p;
  uint32_t m;
  uint32_t K;
  uint64_t pK;                      // p^K, < 2^62
  uint64_t q;                       // p^m
  std::vector<uint64_t> modulus;    // monic, length m+1

  OmElem zero() const { return OmElem(m, 0); }
  OmElem one() const;
  OmElem from_int(int64_t c) const;

  OmElem add(const OmElem& a, const OmElem& b) const;
  OmElem sub(const OmElem& a, const OmElem& b) const;
  OmElem neg(const OmElem& a) const;
  OmElem mul(const OmElem& a, const OmElem& b) const;
  OmElem scalar_mul(const OmElem& a, uint64_t s) const;
  OmElem pow(const OmElem& a, uint64_t e) const;
  /// Inverse of a unit (vp = 0), by Hensel lifting from the mod-p inverse.
  OmElem inv(const OmElem& a) const;
  bool is_zero(const OmElem& a) const;

  /// min_i vp(a_i); K when a = 0 at this precision.
  uint32_t vp(const OmElem& a) const;

  /// tau^j applied to a; tau is the ring map x -> x^p, of order m.
  OmElem frobenius(const OmElem& a, uint32_t j = 1) const;

 private:
  std::vector<OmElem> frob_basis_;  // images of x^i under tau
};

/// Teichmüller lift: the unique root-of-unity (or 0) lift of a residue
/// element, computed by iterating t -> t^q.  The FFElement must come from
/// the matching lex-least field presentation of F_q.
OmElem teichmuller(const UnramCtx& ctx, const ff::FFElement& c);

/// Teichmüller lift of an integer residue (prime subfield), in Z/p^K.
uint64_t teichmuller_unit(const UnramCtx& ctx, uint64_t a);

class RamCtx;
using RamPtr = std::shared_ptr<const RamCtx>;

/// Element of O_m[w]/(w^e + p): polynomial in the uniformizer w of degree
/// < e with O_m coefficients.  pi := w^v satisfies pi^{p-1} = -p.
class PadicScalar {
 public:
  PadicScalar() = default;
  explicit PadicScalar(RamPtr ctx);  // zero

  RamPtr ctx;
  std::vector<OmElem> c;  // c[j] = coefficient of w^j, j < e

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator-() const;
  bool operator==(const PadicScalar& o) const { return c == o.c; }
  bool is_zero() const;

  /// Exact w-adic valuation, or the sentinel cap() when the element is 0 at
  /// working precision ("remove >= cap").
  int64_t valuation() const;
  int64_t cap() const;

  /// True when every nonzero w-degree is a multiple of v (the element lies
  /// in the pi-subring O_m[pi]).
  bool is_pi_integral() const;
};

/// Totally ramified step on top of O_m.  e = v*(p-1); w^e = -p makes w^e + p
/// Eisenstein, v_w(p) = e, v_w(pi) = v.
class RamCtx : public std::enable_shared_from_this<RamCtx> {
 public:
  UnramCtx om;
  uint32_t v;
  uint32_t e;

  PadicScalar zero() const;
  PadicScalar one() const;
  PadicScalar from_int(int64_t n) const;
  PadicScalar from_mpz(const mpz_class& n) const;
  /// num/den with den a p-unit.
  PadicScalar from_mpq(const mpq_class& r) const;
  PadicScalar from_om(const OmElem& a, uint32_t wdeg = 0) const;
  /// w^k (k may exceed e; powers of -p are folded in).
  PadicScalar w_pow(uint64_t k) const;

  /// Inverse of a unit (valuation 0).
  PadicScalar inv(const PadicScalar& a) const;

  /// The unramified Frobenius extended by tau(w) = w, applied entrywise.
  PadicScalar frobenius(const PadicScalar& a, uint32_t j = 1) const;

  /// The root zeta of X^{p-1}+...+1 with zeta = 1 + pi mod pi^2 (cached at
  /// construction, Hensel iteration).
  const PadicScalar& zeta_p() const { return zeta_; }

  /// sum a_i zeta^i for an integer vector in the basis 1, zeta, ..,
  /// zeta^{p-2}.
  PadicScalar embed_cyc(const std::vector<mpz_class>& a) const;

 private:
  friend RamPtr make_ram_ctx(uint64_t, uint32_t, uint32_t, uint32_t);
  RamCtx(uint64_t p, uint32_t m, uint32_t K, uint32_t v);
  void solve_zeta();
  PadicScalar zeta_;
};

RamPtr make_ram_ctx(uint64_t p, uint32_t m, uint32_t K, uint32_t v);

/// Element of Q[X]/(X^{p-1} + p) with exact rational coordinates in the
/// basis 1, pi, ..., pi^{p-2}.
struct ExactPiRational {
  uint64_t p = 0;
  std::vector<mpq_class> c;

  static ExactPiRational zero(uint64_t p);
  static ExactPiRational from_mpq(uint64_t p, const mpq_class& r);
  /// r * pi^t, t arbitrary (powers >= p-1 folded into -p).
  static ExactPiRational pi_power(uint64_t p, uint64_t t, const mpq_class& r);

  ExactPiRational operator+(const ExactPiRational& o) const;
  ExactPiRational operator-(const ExactPiRational& o) const;
  ExactPiRational operator*(const ExactPiRational& o) const;
  bool is_zero() const;

  /// Exact pi-adic valuation; INT64_MAX for zero.
  int64_t val_pi() const;
};

/// lambda_n^{(m)} of theta_m(X) = exp(pi X - pi X^q): the finite sum over
/// r + q s = n of (-1)^s pi^{r+s} / (r! s!), exactly.
ExactPiRational lambda_exact(uint64_t p, uint32_t m, uint64_t n);

/// lambda_0 .. lambda_{n_max}.
std::vector<ExactPiRational> lambda_coeffs(uint64_t p, uint32_t m, uint64_t n_max);

/// Reduce an exact element with val_pi >= 0 into the ramified ring
/// (pi = w^v).
PadicScalar reduce_pi_rational(const RamPtr& ram, const ExactPiRational& x);

struct LambdaCongruenceReport {
  bool holds = false;
  /// True when the all-digits n!! convention differs from the product that
  /// drops the top digit (i.e. the top base-p digit is >= 2).
  bool convention_divergent = false;
  int64_t observed_val = 0;   // val_pi of the tested difference
  int64_t threshold = 0;      // s_p(n) + p - 1
};

/// Check lambda_n = pi^{s_p(n)}/n!! mod pi^{s_p(n)+p-1} for n <= q-1 and
/// lambda_n = 0 mod pi^{s_p(n)+p-1} for n >= q, with n!! the product of the
/// factorials of all base-p digits of n.
LambdaCongruenceReport check_lambda_congruence(uint64_t p, uint32_t m, uint64_t n);

/// n!! with the all-digits convention.
mpz_class double_factorial_all_digits(uint64_t n, uint64_t p);

}  // namespace lcong::padic
