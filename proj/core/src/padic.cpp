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

#include <algorithm>
#include <cassert>
#include <string>

#include "lcong/nt.hpp"

namespace lcong::padic {

namespace {

uint64_t addm(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}
uint64_t subm(uint64_t a, uint64_t b, uint64_t m) { return a >= b ? a - b : a + m - b; }

// Inverse of a mod m for gcd(a, m) = 1.
uint64_t invmod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr != 0) {
    int64_t qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (r != 1) throw precision_error("invmod: argument not a unit");
  return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(m)) : static_cast<uint64_t>(t);
}

uint32_t vp_u64(uint64_t x, uint64_t p, uint32_t K) {
  if (x == 0) return K;
  uint32_t v = 0;
  while (x % p == 0) { x /= p; ++v; }
  return v;
}

// --- dense polynomials over Z/M, coefficient of x^i at index i ---

using ZPoly = std::vector<uint64_t>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, uint64_t M) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = addm(c[i + j], mulmod(a[i], b[j], M), M);
  }
  return c;
}

// a mod f for monic f.
ZPoly zmod(ZPoly a, const ZPoly& f, uint64_t M) {
  size_t d = f.size() - 1;
  while (a.size() > d) {
    uint64_t lead = a.back();
    size_t shift = a.size() - 1 - d;
    if (lead) {
      for (size_t i = 0; i < d; ++i)
        a[shift + i] = subm(a[shift + i], mulmod(lead, f[i], M), M);
    }
    a.pop_back();
  }
  return a;
}

ZPoly zpowmod(ZPoly base, uint64_t e, const ZPoly& f, uint64_t M) {
  ZPoly r = {1};
  base = zmod(std::move(base), f, M);
  while (e) {
    if (e & 1) r = zmod(zmul(r, base, M), f, M);
    base = zmod(zmul(base, base, M), f, M);
    e >>= 1;
  }
  return r;
}

// --- F_p polynomial helpers (for the Hensel seed data) ---

ZPoly fp_mod(ZPoly a, const ZPoly& f, uint64_t p) {
  // f need not be monic; divide by the leading coefficient.
  ZPoly g = f;
  ztrim(g);
  uint64_t il = invmod_u64(g.back(), p);
  for (auto& c : g) c = mulmod(c, il, p);
  a = zmod(std::move(a), g, p);
  ztrim(a);
  return a;
}

// quotient of exact division a / f over F_p
ZPoly fp_divexact(ZPoly a, const ZPoly& f, uint64_t p) {
  ztrim(a);
  if (a.empty()) return {};
  ZPoly q(a.size() - (f.size() - 1), 0);
  uint64_t il = invmod_u64(f.back(), p);
  while (a.size() >= f.size()) {
    uint64_t lead = mulmod(a.back(), il, p);
    size_t shift = a.size() - f.size();
    q[shift] = lead;
    for (size_t i = 0; i < f.size(); ++i)
      a[shift + i] = subm(a[shift + i], mulmod(lead, f[i], p), p);
    ztrim(a);
    if (a.empty()) break;
  }
  if (!a.empty()) throw precision_error("exact polynomial division has a remainder");
  return q;
}

// Bezout a*g + b*h = 1 over F_p for coprime g, h.
void fp_bezout(const ZPoly& g, const ZPoly& h, uint64_t p, ZPoly& a, ZPoly& b) {
  ZPoly r0 = g, r1 = h;
  ZPoly s0 = {1}, s1 = {};
  ZPoly t0 = {}, t1 = {1};
  ztrim(r0);
  ztrim(r1);
  while (!r1.empty()) {
    // r0 = q*r1 + r: long division
    ZPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    ZPoly rem = r0;
    uint64_t il = invmod_u64(r1.back(), p);
    while (rem.size() >= r1.size() && !rem.empty()) {
      uint64_t lead = mulmod(rem.back(), il, p);
      size_t shift = rem.size() - r1.size();
      q[shift] = lead;
      for (size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = subm(rem[shift + i], mulmod(lead, r1[i], p), p);
      ztrim(rem);
    }
    auto comb = [&](const ZPoly& x0, const ZPoly& x1) {
      ZPoly qx = zmul(q, x1, p);
      ZPoly res = x0;
      if (res.size() < qx.size()) res.resize(qx.size(), 0);
      for (size_t i = 0; i < qx.size(); ++i) res[i] = subm(res[i], qx[i], p);
      ztrim(res);
      return res;
    };
    ZPoly s2 = comb(s0, s1), t2 = comb(t0, t1);
    r0 = std::move(r1); r1 = std::move(rem);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  // r0 = gcd (a constant); normalize to 1
  if (r0.size() != 1) throw precision_error("bezout: inputs not coprime");
  uint64_t il = invmod_u64(r0[0], p);
  a = s0;
  b = t0;
  for (auto& c : a) c = mulmod(c, il, p);
  for (auto& c : b) c = mulmod(c, il, p);
}

int64_t vp_mpz(const mpz_class& x, uint64_t p) {
  if (x == 0) return INT64_MAX;
  mpz_class tmp;
  mpz_class pz = static_cast<unsigned long>(p);
  return static_cast<int64_t>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

int64_t vp_mpq(const mpq_class& x, uint64_t p) {
  if (x == 0) return INT64_MAX;
  return vp_mpz(x.get_num(), p) - vp_mpz(x.get_den(), p);
}

uint64_t mpz_mod_u64(const mpz_class& x, uint64_t M) {
  return mpz_fdiv_ui(x.get_mpz_t(), M);
}

}  // namespace

// --- UnramCtx ---

UnramCtx::UnramCtx(uint64_t p_, uint32_t m_, uint32_t K_) : p(p_), m(m_), K(K_) {
  if (!is_prime_u64(p)) throw input_error("p must be prime");
  if (m < 1 || K < 1) throw input_error("m and K must be positive");
  pK = 1;
  for (uint32_t i = 0; i < K; ++i) {
    if (pK > (uint64_t(1) << 62) / p)
      throw precision_error("p^K does not fit the scalar type; lower the precision");
    pK *= p;
  }
  q = checked_pow_u64(p, m, "q = p^m");

  if (m == 1) {
    modulus = {pK - 1, 1};  // x - 1, an exact divisor of x^{p-1} - 1
  } else {
    // Hensel-lift the factorization x^{q-1} - 1 = g * h from F_p to Z/p^K.
    ZPoly g = [&] {
      auto fld = ff::make_field(p, m);
      ZPoly r(fld->modulus.begin(), fld->modulus.end());
      return r;
    }();
    ZPoly xq1(q, 0);  // x^{q-1} - 1
    xq1[q - 1] = 1;
    xq1[0] = p - 1;
    ZPoly h = fp_divexact(xq1, g, p);
    ZPoly ba, bb;
    fp_bezout(g, h, p, ba, bb);

    ZPoly G = g, H = h;  // entries lifted as-is into Z/p^K
    uint64_t pj = p;
    for (uint32_t j = 1; j < K; ++j, pj *= p) {
      // E = (G*H - (x^{q-1} - 1)) / p^j mod p
      ZPoly prod = zmul(G, H, pK);
      ZPoly target(q, 0);
      target[q - 1] = 1;
      target[0] = pK - 1;
      ZPoly E(prod.size(), 0);
      for (size_t i = 0; i < prod.size(); ++i) {
        uint64_t diff = subm(prod[i], i < target.size() ? target[i] : 0, pK);
        E[i] = diff / pj % p;
      }
      ztrim(E);
      if (E.empty()) continue;
      // dG = (-E*b) mod g; dH = (-E - dG*h)/g, all over F_p
      ZPoly negE = E;
      for (auto& c : negE) c = subm(0, c, p);
      ZPoly dG = fp_mod(zmul(negE, bb, p), g, p);
      ZPoly rest = zmul(dG, h, p);
      ZPoly numer = negE;
      if (numer.size() < rest.size()) numer.resize(rest.size(), 0);
      for (size_t i = 0; i < rest.size(); ++i) numer[i] = subm(numer[i], rest[i], p);
      ztrim(numer);
      ZPoly dH = numer.empty() ? ZPoly{} : fp_divexact(numer, g, p);
      if (G.size() < dG.size()) throw precision_error("hensel: degree overflow");
      for (size_t i = 0; i < dG.size(); ++i) G[i] = addm(G[i], mulmod(dG[i], pj, pK), pK);
      if (H.size() < dH.size()) H.resize(dH.size(), 0);
      for (size_t i = 0; i < dH.size(); ++i) H[i] = addm(H[i], mulmod(dH[i], pj, pK), pK);
    }
    // sanity: G*H = x^{q-1} - 1 at full precision
    ZPoly prod = zmul(G, H, pK);
    for (size_t i = 0; i < prod.size(); ++i) {
      uint64_t want = (i == q - 1) ? 1 : (i == 0 ? pK - 1 : 0);
      if (prod[i] != want) throw precision_error("teichmuller modulus lift failed");
    }
    modulus = G;
  }

  // Frobenius basis images: tau(x^i) = (x^p)^i.
  ZPoly xp = zpowmod({0, 1}, p, modulus, pK);
  xp.resize(m, 0);
  frob_basis_.resize(m);
  OmElem cur = one();
  for (uint32_t i = 0; i < m; ++i) {
    frob_basis_[i] = cur;
    if (i + 1 < m) cur = mul(cur, xp);
  }
  // tau^m must be the identity on the generator.
  OmElem gen = zero();
  if (m >= 2) gen[1] = 1; else gen[0] = 1;
  OmElem t = gen;
  for (uint32_t j = 0; j < m; ++j) t = frobenius(t, 1);
  if (t != gen) throw precision_error("frobenius has wrong order on this modulus");
}

OmElem UnramCtx::one() const {
  OmElem e(m, 0);
  e[0] = 1 % pK;
  return e;
}

OmElem UnramCtx::from_int(int64_t c) const {
  OmElem e(m, 0);
  int64_t r = c % static_cast<int64_t>(pK);
  if (r < 0) r += static_cast<int64_t>(pK);
  e[0] = static_cast<uint64_t>(r);
  return e;
}

OmElem UnramCtx::add(const OmElem& a, const OmElem& b) const {
  OmElem c(m);
  for (uint32_t i = 0; i < m; ++i) c[i] = addm(a[i], b[i], pK);
  return c;
}

OmElem UnramCtx::sub(const OmElem& a, const OmElem& b) const {
  OmElem c(m);
  for (uint32_t i = 0; i < m; ++i) c[i] = subm(a[i], b[i], pK);
  return c;
}

OmElem UnramCtx::neg(const OmElem& a) const {
  OmElem c(m);
  for (uint32_t i = 0; i < m; ++i) c[i] = subm(0, a[i], pK);
  return c;
}

OmElem UnramCtx::mul(const OmElem& a, const OmElem& b) const {
  ZPoly c = zmod(zmul(a, b, pK), modulus, pK);
  c.resize(m, 0);
  return c;
}

OmElem UnramCtx::scalar_mul(const OmElem& a, uint64_t s) const {
  OmElem c(m);
  s %= pK;
  for (uint32_t i = 0; i < m; ++i) c[i] = mulmod(a[i], s, pK);
  return c;
}

OmElem UnramCtx::pow(const OmElem& a, uint64_t e) const {
  ZPoly r = zpowmod(a, e, modulus, pK);
  r.resize(m, 0);
  return r;
}

bool UnramCtx::is_zero(const OmElem& a) const {
  return std::all_of(a.begin(), a.end(), [](uint64_t c) { return c == 0; });
}

uint32_t UnramCtx::vp(const OmElem& a) const {
  uint32_t v = K;
  for (uint64_t c : a) v = std::min(v, vp_u64(c, p, K));
  return v;
}

OmElem UnramCtx::inv(const OmElem& a) const {
  if (vp(a) != 0) throw precision_error("O_m inverse of a non-unit");
  // mod-p inverse by Bezout, then Hensel: y <- y(2 - a y)
  ZPoly am(m), gm(modulus.size());
  for (uint32_t i = 0; i < m; ++i) am[i] = a[i] % p;
  for (size_t i = 0; i < modulus.size(); ++i) gm[i] = modulus[i] % p;
  ZPoly ba, bb;
  ztrim(am);
  fp_bezout(am, gm, p, ba, bb);  // ba*a + bb*g = 1 => ba = a^{-1} mod (g, p)
  OmElem y = zero();
  for (size_t i = 0; i < ba.size() && i < m; ++i) y[i] = ba[i];
  for (uint32_t it = 0; it < 32; ++it) {
    OmElem ay = mul(a, y);
    OmElem corr = sub(from_int(2), ay);
    y = mul(y, corr);
    if (mul(a, y) == one()) break;
  }
  if (mul(a, y) != one()) throw precision_error("O_m inversion did not converge");
  return y;
}

OmElem UnramCtx::frobenius(const OmElem& a, uint32_t j) const {
  OmElem r = a;
  for (uint32_t t = 0; t < j % m; ++t) {
    OmElem acc = zero();
    for (uint32_t i = 0; i < m; ++i) {
      if (!r[i]) continue;
      acc = add(acc, scalar_mul(frob_basis_[i], r[i]));
    }
    r = std::move(acc);
  }
  return r;
}

OmElem teichmuller(const UnramCtx& ctx, const ff::FFElement& c) {
  if (c.size() != ctx.m) throw input_error("residue element has wrong degree");
  OmElem t = ctx.zero();
  for (uint32_t i = 0; i < ctx.m; ++i) t[i] = c[i];
  for (uint32_t it = 0; it <= ctx.K; ++it) t = ctx.pow(t, ctx.q);
  if (ctx.pow(t, ctx.q) != t) throw precision_error("teichmuller iteration did not stabilize");
  return t;
}

uint64_t teichmuller_unit(const UnramCtx& ctx, uint64_t a) {
  a %= ctx.p;
  if (a == 0) return 0;
  uint64_t t = a;
  for (uint32_t it = 0; it <= ctx.K; ++it) t = powmod(t, ctx.p, ctx.pK);
  return t;
}

// --- PadicScalar ---

PadicScalar::PadicScalar(RamPtr ctx_) : ctx(std::move(ctx_)) {
  c.assign(ctx->e, ctx->om.zero());
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  PadicScalar r(ctx);
  for (uint32_t j = 0; j < ctx->e; ++j) r.c[j] = ctx->om.add(c[j], o.c[j]);
  return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
  PadicScalar r(ctx);
  for (uint32_t j = 0; j < ctx->e; ++j) r.c[j] = ctx->om.sub(c[j], o.c[j]);
  return r;
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r(ctx);
  for (uint32_t j = 0; j < ctx->e; ++j) r.c[j] = ctx->om.neg(c[j]);
  return r;
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  const auto& om = ctx->om;
  uint32_t e = ctx->e;
  uint64_t minus_p = om.pK - (om.p % om.pK);
  PadicScalar r(ctx);
  for (uint32_t j = 0; j < e; ++j) {
    if (om.is_zero(c[j])) continue;
    for (uint32_t k = 0; k < e; ++k) {
      if (om.is_zero(o.c[k])) continue;
      OmElem prod = om.mul(c[j], o.c[k]);
      uint32_t t = j + k;
      if (t >= e) {
        t -= e;
        prod = om.scalar_mul(prod, minus_p);  // w^e = -p
      }
      r.c[t] = om.add(r.c[t], prod);
    }
  }
  return r;
}

bool PadicScalar::is_zero() const {
  for (const auto& x : c)
    if (!ctx->om.is_zero(x)) return false;
  return true;
}

int64_t PadicScalar::cap() const { return int64_t(ctx->e) * ctx->om.K; }

int64_t PadicScalar::valuation() const {
  int64_t best = cap();
  for (uint32_t j = 0; j < ctx->e; ++j) {
    uint32_t v = ctx->om.vp(c[j]);
    if (v < ctx->om.K) best = std::min<int64_t>(best, j + int64_t(ctx->e) * v);
  }
  return best;
}

bool PadicScalar::is_pi_integral() const {
  for (uint32_t j = 0; j < ctx->e; ++j)
    if (j % ctx->v != 0 && !ctx->om.is_zero(c[j])) return false;
  return true;
}

// --- RamCtx ---

RamCtx::RamCtx(uint64_t p, uint32_t m, uint32_t K, uint32_t v_)
    : om(p, m, K), v(v_), e(v_ * static_cast<uint32_t>(p - 1)) {
  if (v < 1) throw input_error("ramification multiplier must be positive");
}

RamPtr make_ram_ctx(uint64_t p, uint32_t m, uint32_t K, uint32_t v) {
  auto ctx = std::shared_ptr<RamCtx>(new RamCtx(p, m, K, v));
  ctx->solve_zeta();
  return ctx;
}

PadicScalar RamCtx::zero() const { return PadicScalar(shared_from_this()); }

PadicScalar RamCtx::one() const {
  PadicScalar r(shared_from_this());
  r.c[0] = om.one();
  return r;
}

PadicScalar RamCtx::from_int(int64_t n) const {
  PadicScalar r(shared_from_this());
  r.c[0] = om.from_int(n);
  return r;
}

PadicScalar RamCtx::from_mpz(const mpz_class& n) const {
  PadicScalar r(shared_from_this());
  r.c[0][0] = mpz_mod_u64(n, om.pK);
  return r;
}

PadicScalar RamCtx::from_mpq(const mpq_class& r_) const {
  uint64_t num = mpz_mod_u64(r_.get_num(), om.pK);
  uint64_t den = mpz_mod_u64(r_.get_den(), om.pK);
  if (den % om.p == 0) throw precision_error("denominator is not a p-unit");
  PadicScalar r(shared_from_this());
  r.c[0][0] = mulmod(num, invmod_u64(den, om.pK), om.pK);
  return r;
}

PadicScalar RamCtx::from_om(const OmElem& a, uint32_t wdeg) const {
  PadicScalar r(shared_from_this());
  uint64_t scale = 1;
  uint32_t fold = wdeg / e;
  wdeg %= e;
  for (uint32_t i = 0; i < fold; ++i) scale = mulmod(scale, om.pK - om.p % om.pK, om.pK);
  r.c[wdeg] = om.scalar_mul(a, scale);
  return r;
}

PadicScalar RamCtx::w_pow(uint64_t k) const {
  PadicScalar r(shared_from_this());
  uint64_t fold = k / e;
  uint64_t scale = 1;
  for (uint64_t i = 0; i < fold; ++i) scale = mulmod(scale, om.pK - om.p % om.pK, om.pK);
  r.c[k % e][0] = scale;
  return r;
}

PadicScalar RamCtx::inv(const PadicScalar& a) const {
  if (a.valuation() != 0) throw precision_error("ramified inverse of a non-unit");
  PadicScalar y = from_om(om.inv(a.c[0]));
  PadicScalar two = from_int(2);
  uint32_t iters = 2;
  for (int64_t reach = 1; reach < a.cap(); reach *= 2) ++iters;
  for (uint32_t i = 0; i < iters; ++i) y = y * (two - a * y);
  if (!(a * y - one()).is_zero()) throw precision_error("ramified inversion did not converge");
  return y;
}

PadicScalar RamCtx::frobenius(const PadicScalar& a, uint32_t j) const {
  PadicScalar r(shared_from_this());
  for (uint32_t t = 0; t < e; ++t) r.c[t] = om.frobenius(a.c[t], j);
  return r;
}

void RamCtx::solve_zeta() {
  auto self = shared_from_this();
  uint64_t p = om.p;
  // Phi_p(1 + pi t) / p = sum_{j<=p-2} (binom(p,j+1)/p) pi^j t^j - t^{p-1} =: G(t),
  // with unit derivative at units; solve G(t) = 0, t = 1 mod w.
  std::vector<PadicScalar> d;  // d[j] = c_j pi^j
  for (uint64_t j = 0; j + 1 <= p - 1; ++j) {
    mpz_class cj;
    mpz_bin_uiui(cj.get_mpz_t(), p, static_cast<unsigned long>(j + 1));
    cj /= p;
    d.push_back(from_mpz(cj) * w_pow(uint64_t(v) * j));
  }
  auto evalG = [&](const PadicScalar& t) {
    PadicScalar acc = zero();
    PadicScalar tp = one();
    for (uint64_t j = 0; j <= p - 2; ++j) {
      acc = acc + d[j] * tp;
      tp = tp * t;
    }
    return acc - tp;  // tp = t^{p-1}
  };
  auto evalGp = [&](const PadicScalar& t) {
    PadicScalar acc = zero();
    PadicScalar tp = one();
    for (uint64_t j = 1; j <= p - 2; ++j) {
      acc = acc + from_int(static_cast<int64_t>(j)) * d[j] * tp;
      tp = tp * t;
    }
    return acc - from_int(static_cast<int64_t>(p - 1)) * tp;  // tp = t^{p-2}
  };

  PadicScalar t = one();
  bool converged = false;
  for (uint32_t it = 0; it < 200; ++it) {
    PadicScalar g = evalG(t);
    if (g.is_zero()) { converged = true; break; }
    t = t - g * inv(evalGp(t));
  }
  if (!converged) throw precision_error("zeta_p iteration did not converge; raise precision");

  zeta_ = one() + w_pow(v) * t;
  // contract: zeta^p = 1 and zeta = 1 + pi mod pi^2
  PadicScalar zp = zeta_;
  for (uint64_t i = 1; i < p; ++i) zp = zp * zeta_;
  if (!(zp - one()).is_zero()) throw precision_error("zeta_p is not a p-th root of unity");
  if ((zeta_ - one() - w_pow(v)).valuation() < 2 * int64_t(v))
    throw precision_error("zeta_p normalization violated");
}

PadicScalar RamCtx::embed_cyc(const std::vector<mpz_class>& a) const {
  PadicScalar acc = zero();
  PadicScalar zpow = one();
  for (size_t i = 0; i < a.size(); ++i) {
    acc = acc + from_mpz(a[i]) * zpow;
    if (i + 1 < a.size()) zpow = zpow * zeta_;
  }
  return acc;
}

// --- exact arithmetic in Q[X]/(X^{p-1} + p) ---

ExactPiRational ExactPiRational::zero(uint64_t p) {
  ExactPiRational r;
  r.p = p;
  r.c.assign(p - 1, mpq_class(0));
  return r;
}

ExactPiRational ExactPiRational::from_mpq(uint64_t p, const mpq_class& x) {
  auto r = zero(p);
  r.c[0] = x;
  return r;
}

ExactPiRational ExactPiRational::pi_power(uint64_t p, uint64_t t, const mpq_class& x) {
  auto r = zero(p);
  uint64_t fold = t / (p - 1);
  mpz_class scale = 1;
  for (uint64_t i = 0; i < fold; ++i) scale *= -static_cast<long>(p);
  r.c[t % (p - 1)] = x * mpq_class(scale);
  return r;
}

ExactPiRational ExactPiRational::operator+(const ExactPiRational& o) const {
  auto r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

ExactPiRational ExactPiRational::operator-(const ExactPiRational& o) const {
  auto r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

ExactPiRational ExactPiRational::operator*(const ExactPiRational& o) const {
  auto r = zero(p);
  size_t n = c.size();
  for (size_t i = 0; i < n; ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (o.c[j] == 0) continue;
      mpq_class prod = c[i] * o.c[j];
      size_t t = i + j;
      if (t >= n) {
        t -= n;
        prod *= -static_cast<long>(p);
      }
      r.c[t] += prod;
    }
  }
  return r;
}

bool ExactPiRational::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x == 0; });
}

int64_t ExactPiRational::val_pi() const {
  int64_t best = INT64_MAX;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    best = std::min<int64_t>(best, int64_t(i) + int64_t(p - 1) * vp_mpq(c[i], p));
  }
  return best;
}

ExactPiRational lambda_exact(uint64_t p, uint32_t m, uint64_t n) {
  uint64_t q = checked_pow_u64(p, m, "q = p^m");
  auto acc = ExactPiRational::zero(p);
  for (uint64_t s = 0; q * s <= n; ++s) {
    uint64_t r = n - q * s;
    mpz_class rf, sf;
    mpz_fac_ui(rf.get_mpz_t(), static_cast<unsigned long>(r));
    mpz_fac_ui(sf.get_mpz_t(), static_cast<unsigned long>(s));
    mpq_class coeff(s % 2 ? mpz_class(-1) : mpz_class(1), rf * sf);
    coeff.canonicalize();
    acc = acc + ExactPiRational::pi_power(p, r + s, coeff);
  }
  return acc;
}

std::vector<ExactPiRational> lambda_coeffs(uint64_t p, uint32_t m, uint64_t n_max) {
  std::vector<ExactPiRational> out;
  out.reserve(n_max + 1);
  for (uint64_t n = 0; n <= n_max; ++n) out.push_back(lambda_exact(p, m, n));
  return out;
}

PadicScalar reduce_pi_rational(const RamPtr& ram, const ExactPiRational& x) {
  if (x.p != ram->om.p) throw input_error("prime mismatch");
  if (!x.is_zero() && x.val_pi() < 0)
    throw precision_error("cannot reduce an element of negative valuation");
  PadicScalar r = ram->zero();
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    r = r + ram->from_mpq(x.c[i]) * ram->w_pow(uint64_t(ram->v) * i);
  }
  return r;
}

mpz_class double_factorial_all_digits(uint64_t n, uint64_t p) {
  mpz_class acc = 1;
  while (n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n % p));
    acc *= f;
    n /= p;
  }
  return acc;
}

LambdaCongruenceReport check_lambda_congruence(uint64_t p, uint32_t m, uint64_t n) {
  uint64_t q = checked_pow_u64(p, m, "q = p^m");
  LambdaCongruenceReport rep;
  uint64_t s = p_weight(n, p);
  rep.threshold = static_cast<int64_t>(s + p - 1);
  auto digits = p_digits(n, p);
  rep.convention_divergent = !digits.empty() && digits.back() >= 2;

  auto lam = lambda_exact(p, m, n);
  ExactPiRational diff = lam;
  if (n <= q - 1) {
    mpq_class inv_dd(mpz_class(1), double_factorial_all_digits(n, p));
    inv_dd.canonicalize();
    diff = lam - ExactPiRational::pi_power(p, s, inv_dd);
  }
  rep.observed_val = diff.val_pi();
  rep.holds = rep.observed_val >= rep.threshold;
  return rep;
}

}  // namespace lcong::padic
