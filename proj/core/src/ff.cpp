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

#include <algorithm>
#include <cassert>
#include <string>

#include "lcong/nt.hpp"

namespace lcong::ff {

namespace {

// --- dense polynomials over F_p, coefficient of x^i at index i ---

using Poly = std::vector<uint32_t>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<uint32_t>((c[i + j] + uint64_t(a[i]) * b[j]) % p);
  }
  return c;
}

// a mod f, f monic.
Poly pmod(Poly a, const Poly& f, uint64_t p) {
  size_t d = f.size() - 1;
  while (a.size() > d) {
    uint32_t lead = a.back();
    size_t shift = a.size() - 1 - d;
    if (lead) {
      for (size_t i = 0; i < d; ++i) {
        uint64_t sub = uint64_t(lead) * f[i] % p;
        a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  ptrim(a);
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
  return pmod(pmul(a, b, p), f, p);
}

Poly ppowmod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
  Poly r = {1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly pgcd(Poly a, Poly b, uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // make b monic for the reduction
    uint32_t lead = b.back();
    if (lead != 1) {
      uint64_t il = powmod(lead, p - 2, p);
      for (auto& c : b) c = static_cast<uint32_t>(c * il % p);
    }
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly psub(Poly a, const Poly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i)
    a[i] = static_cast<uint32_t>((a[i] + p - b[i]) % p);
  ptrim(a);
  return a;
}

// x^{p^k} mod f by iterated Frobenius.
Poly frobenius_power(const Poly& f, uint64_t p, uint32_t k) {
  Poly t = {0, 1};  // x
  for (uint32_t i = 0; i < k; ++i) t = ppowmod(t, p, f, p);
  return t;
}

// Rabin's test for a monic polynomial of degree d over F_p.
bool is_irreducible(const Poly& f, uint64_t p) {
  uint32_t d = static_cast<uint32_t>(f.size() - 1);
  if (d == 0) return false;
  if (d == 1) return true;
  Poly x = {0, 1};
  Poly xqd = frobenius_power(f, p, d);
  if (psub(xqd, x, p) != Poly{}) return false;
  uint32_t rest = d;
  for (uint32_t l = 2; l * l <= rest; ++l) {
    if (rest % l) continue;
    while (rest % l == 0) rest /= l;
    Poly g = psub(frobenius_power(f, p, d / l), x, p);
    Poly gc = pgcd(f, g, p);
    if (gc.size() != 1) return false;
  }
  if (rest > 1 && rest != d) {
    Poly g = psub(frobenius_power(f, p, d / rest), x, p);
    if (pgcd(f, g, p).size() != 1) return false;
  } else if (rest == d) {
    Poly g = psub(frobenius_power(f, p, 1), x, p);
    if (pgcd(f, g, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

// --- FieldCtx ---

uint64_t FieldCtx::order() const {
  return checked_pow_u64(p, degree, "field order");
}

FFElement FieldCtx::one() const {
  FFElement e(degree, 0);
  e[0] = 1;
  return e;
}

FFElement FieldCtx::from_uint(uint64_t c) const {
  FFElement e(degree, 0);
  e[0] = static_cast<uint32_t>(c % p);
  return e;
}

FFElement FieldCtx::generator() const {
  FFElement e(degree, 0);
  if (degree >= 2) {
    e[1] = 1;
  }
  // degree 1: x reduces to -modulus[0]
  if (degree == 1) e[0] = static_cast<uint32_t>((p - modulus[0]) % p);
  return e;
}

bool FieldCtx::is_zero(const FFElement& a) const {
  return std::all_of(a.begin(), a.end(), [](uint32_t c) { return c == 0; });
}

FFElement FieldCtx::add(const FFElement& a, const FFElement& b) const {
  FFElement c(degree);
  for (uint32_t i = 0; i < degree; ++i) {
    uint32_t s = a[i] + b[i];
    c[i] = s >= p ? static_cast<uint32_t>(s - p) : s;
  }
  return c;
}

FFElement FieldCtx::sub(const FFElement& a, const FFElement& b) const {
  FFElement c(degree);
  for (uint32_t i = 0; i < degree; ++i)
    c[i] = static_cast<uint32_t>((a[i] + p - b[i]) % p);
  return c;
}

FFElement FieldCtx::neg(const FFElement& a) const {
  FFElement c(degree);
  for (uint32_t i = 0; i < degree; ++i)
    c[i] = static_cast<uint32_t>((p - a[i]) % p);
  return c;
}

FFElement FieldCtx::mul(const FFElement& a, const FFElement& b) const {
  Poly c = pmod(pmul(a, b, p), modulus, p);
  c.resize(degree, 0);
  return c;
}

FFElement FieldCtx::pow(const FFElement& a, uint64_t e) const {
  Poly r = ppowmod(a, e, modulus, p);
  r.resize(degree, 0);
  return r;
}

FFElement FieldCtx::inv(const FFElement& a) const {
  if (is_zero(a)) throw input_error("division by zero in finite field");
  return pow(a, order() - 2);
}

FFElement FieldCtx::embed_from_base(const FFElement& a) const {
  if (!base) throw input_error("field has no base to embed from");
  FFElement acc = zero();
  for (uint32_t i = 0; i < base->degree; ++i) {
    if (a[i] == 0) continue;
    FFElement t = base_gen_image_powers_[i];
    for (auto& c : t) c = static_cast<uint32_t>(c * uint64_t(a[i]) % p);
    acc = add(acc, t);
  }
  return acc;
}

uint32_t FieldCtx::trace_to_prime(const FFElement& a) const {
  if (a.size() != degree) throw input_error("element does not belong to this field");
  uint64_t s = 0;
  for (uint32_t i = 0; i < degree; ++i) s += uint64_t(trace_row_[i]) * a[i];
  return static_cast<uint32_t>(s % p);
}

FFElement FieldCtx::element_at(uint64_t k) const {
  FFElement e(degree);
  for (uint32_t i = 0; i < degree; ++i) {
    e[i] = static_cast<uint32_t>(k % p);
    k /= p;
  }
  return e;
}

void FieldCtx::finalize() {
  // Frobenius matrix: column i = coefficients of (x^i)^p = (x^p)^i.
  Poly xp = frobenius_power(modulus, p, 1);
  xp.resize(degree, 0);
  std::vector<FFElement> frob_col(degree);
  FFElement cur = one();
  for (uint32_t i = 0; i < degree; ++i) {
    frob_col[i] = cur;
    if (i + 1 < degree) cur = mul(cur, xp);
  }
  // T = sum of Frobenius powers; trace(x^i) = constant coefficient of column i.
  std::vector<FFElement> tcol(degree);
  for (uint32_t i = 0; i < degree; ++i) {
    FFElement acc(degree, 0);
    FFElement v(degree, 0);
    v[i] = 1;
    for (uint32_t j = 0; j < degree; ++j) {
      acc = add(acc, v);
      // v <- Frob(v)
      FFElement w(degree, 0);
      for (uint32_t t = 0; t < degree; ++t) {
        if (v[t] == 0) continue;
        FFElement col = frob_col[t];
        for (auto& c : col) c = static_cast<uint32_t>(c * uint64_t(v[t]) % p);
        w = add(w, col);
      }
      v = std::move(w);
    }
    tcol[i] = acc;
  }
  trace_row_.resize(degree);
  for (uint32_t i = 0; i < degree; ++i) {
    trace_row_[i] = tcol[i][0];
    for (uint32_t j = 1; j < degree; ++j) assert(tcol[i][j] == 0 && "trace must land in F_p");
  }

  if (base) {
    base_gen_image_powers_.resize(base->degree);
    FFElement cur2 = one();
    for (uint32_t i = 0; i < base->degree; ++i) {
      base_gen_image_powers_[i] = cur2;
      if (i + 1 < base->degree) cur2 = mul(cur2, base_generator_image);
    }
  }
}

FieldPtr make_field(uint64_t p, uint32_t degree) {
  if (!is_prime_u64(p)) throw input_error("p = " + std::to_string(p) + " is not prime");
  if (degree < 1) throw input_error("field degree must be positive");
  checked_pow_u64(p, degree, "field order");

  // Scan monic polynomials; the degree-1..degree-(degree-1) coefficients are a
  // base-p counter read highest degree first.
  uint64_t count = checked_pow_u64(p, degree, "modulus scan");
  for (uint64_t k = 0; k < count; ++k) {
    Poly f(degree + 1, 0);
    f[degree] = 1;
    uint64_t t = k;
    for (uint32_t i = 0; i < degree; ++i) {
      f[degree - 1 - i] = static_cast<uint32_t>(t / checked_pow_u64(p, degree - 1 - i));
      t %= checked_pow_u64(p, degree - 1 - i);
    }
    if (is_irreducible(f, p)) {
      auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
      ctx->p = p;
      ctx->degree = degree;
      ctx->modulus = f;
      ctx->finalize();
      return ctx;
    }
  }
  throw input_error("no irreducible polynomial found (unreachable)");
}

namespace {

// --- polynomials with coefficients in an extension field ---

using FPoly = std::vector<FFElement>;

FPoly fmod(FPoly a, const FPoly& f, const FieldCtx& F) {
  size_t d = f.size() - 1;  // f monic
  while (a.size() > d) {
    FFElement lead = a.back();
    size_t shift = a.size() - 1 - d;
    if (!F.is_zero(lead)) {
      for (size_t i = 0; i < d; ++i)
        a[shift + i] = F.sub(a[shift + i], F.mul(lead, f[i]));
    }
    a.pop_back();
  }
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
  return a;
}

FPoly fmulmod(const FPoly& a, const FPoly& b, const FPoly& f, const FieldCtx& F) {
  if (a.empty() || b.empty()) return {};
  FPoly c(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return fmod(std::move(c), f, F);
}

FPoly fpowmod(FPoly base, uint64_t e, const FPoly& f, const FieldCtx& F) {
  FPoly r = {F.one()};
  base = fmod(std::move(base), f, F);
  while (e) {
    if (e & 1) r = fmulmod(r, base, f, F);
    base = fmulmod(base, base, f, F);
    e >>= 1;
  }
  return r;
}

FPoly fgcd(FPoly a, FPoly b, const FieldCtx& F) {
  while (!b.empty()) {
    FFElement il = F.inv(b.back());
    for (auto& c : b) c = F.mul(c, il);
    FPoly r = fmod(std::move(a), b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FPoly fsub_const(FPoly a, const FFElement& c, const FieldCtx& F) {
  if (a.empty()) a.push_back(F.zero());
  a[0] = F.sub(a[0], c);
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
  return a;
}

void make_monic(FPoly& a, const FieldCtx& F) {
  if (a.empty()) return;
  FFElement il = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, il);
}

// All roots in F of a monic polynomial splitting into distinct linear
// factors over F.  Deterministic: splitting candidates are enumerated in
// field order.
void collect_roots(FPoly h, const FieldCtx& F, std::vector<FFElement>& out) {
  if (h.empty()) return;
  if (h.size() == 2) {  // x + c
    out.push_back(F.neg(h[0]));
    return;
  }
  uint64_t Q = F.order();
  for (uint64_t cand = 0;; ++cand) {
    if (cand >= Q) throw input_error("root splitting failed (polynomial not split?)");
    FFElement t = F.element_at(cand);
    FPoly g;
    if (F.p == 2) {
      // trace splitting: gcd(h, sum_{i<deg} (t x)^{2^i})
      FPoly tx = fmod({F.zero(), t}, h, F);
      FPoly acc = tx;
      FPoly cur = tx;
      for (uint32_t i = 1; i < F.degree; ++i) {
        cur = fmulmod(cur, cur, h, F);
        // acc += cur
        if (acc.size() < cur.size()) acc.resize(cur.size(), F.zero());
        for (size_t j = 0; j < cur.size(); ++j) acc[j] = F.add(acc[j], cur[j]);
      }
      while (!acc.empty() && F.is_zero(acc.back())) acc.pop_back();
      g = fgcd(h, acc, F);
    } else {
      // quadratic-character splitting: gcd(h, (x+t)^{(Q-1)/2} - 1)
      FPoly w = fpowmod({t, F.one()}, (Q - 1) / 2, h, F);
      w = fsub_const(std::move(w), F.one(), F);
      g = fgcd(h, w, F);
    }
    if (g.size() > 1 && g.size() < h.size()) {
      make_monic(g, F);
      FPoly rest = h;
      // rest = h / g by repeated reduction: since h = g * (h/g), do division
      FPoly quot;
      {
        FPoly num = h;
        quot.assign(num.size() - g.size() + 1, F.zero());
        while (num.size() >= g.size() && !num.empty()) {
          FFElement lead = num.back();
          size_t shift = num.size() - g.size();
          quot[shift] = lead;
          for (size_t i = 0; i < g.size(); ++i)
            num[shift + i] = F.sub(num[shift + i], F.mul(lead, g[i]));
          while (!num.empty() && F.is_zero(num.back())) num.pop_back();
        }
      }
      collect_roots(g, F, out);
      collect_roots(quot, F, out);
      return;
    }
  }
}

}  // namespace

FieldPtr extend_field(const FieldPtr& base, uint32_t r) {
  if (r < 1) throw input_error("extension degree must be positive");
  if (r == 1) {
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p = base->p;
    ctx->degree = base->degree;
    ctx->modulus = base->modulus;
    ctx->base = base;
    ctx->base_generator_image = base->generator();
    ctx->finalize();
    return ctx;
  }
  FieldPtr big = make_field(base->p, base->degree * r);
  auto ctx = std::const_pointer_cast<FieldCtx>(big);

  // Lex-least root (coefficient vectors compared from the constant term up)
  // of base->modulus in the new field.
  FPoly g(base->modulus.size());
  for (size_t i = 0; i < g.size(); ++i) g[i] = ctx->from_uint(base->modulus[i]);
  std::vector<FFElement> roots;
  collect_roots(g, *ctx, roots);
  if (roots.empty()) throw input_error("base modulus has no root in extension (unreachable)");
  std::sort(roots.begin(), roots.end());

  ctx->base = base;
  ctx->base_generator_image = roots.front();
  ctx->finalize();
  return ctx;
}

uint32_t trace_to_prime(const FieldCtx& ctx, const FFElement& a) {
  return ctx.trace_to_prime(a);
}

void SparsePoly::validate() const {
  for (const auto& [d, c] : terms) {
    if (d.size() != n) throw input_error("exponent vector dimension mismatch");
    if (c.size() != coeff_field->degree) throw input_error("coefficient field mismatch");
  }
  for (size_t i = 1; i < terms.size(); ++i)
    if (!(terms[i - 1].first < terms[i].first))
      throw input_error("sparse polynomial terms must be sorted and distinct");
}

FFElement eval_poly(const SparsePoly& f, const FieldCtx& ctx,
                    const std::vector<FFElement>& x) {
  if (x.size() != f.n) throw input_error("point dimension mismatch");
  const FieldCtx* cf = f.coeff_field.get();
  FFElement acc = ctx.zero();
  for (const auto& [d, c] : f.terms) {
    FFElement cc;
    if (cf == &ctx) {
      cc = c;
    } else if (ctx.base.get() == cf) {
      cc = ctx.embed_from_base(c);
    } else if (cf->degree == 1) {
      cc = ctx.from_uint(c[0]);
    } else {
      throw input_error("coefficient field is not the base of the evaluation field");
    }
    FFElement term = cc;
    for (uint32_t t = 0; t < f.n; ++t) {
      if (d[t] == 0) continue;
      term = ctx.mul(term, ctx.pow(x[t], d[t]));
    }
    acc = ctx.add(acc, term);
  }
  return acc;
}

PointStream::PointStream(FieldPtr ctx, uint32_t n, uint64_t budget)
    : ctx_(std::move(ctx)), n_(n) {
  uint64_t q = ctx_->order();
  total_ = 1;
  for (uint32_t i = 0; i < n; ++i) {
    if (total_ > budget / q + 1) throw budget_error("point enumeration exceeds budget (q^n > " + std::to_string(budget) + ")");
    total_ *= q;
  }
  if (total_ > budget)
    throw budget_error("point enumeration exceeds budget (q^n = " + std::to_string(total_) +
                       " > " + std::to_string(budget) + ")");
}

void PointStream::for_each_in_chunk(
    uint64_t chunk, uint64_t chunks,
    const std::function<void(const std::vector<FFElement>&)>& fn) const {
  uint64_t lo = total_ / chunks * chunk + std::min<uint64_t>(chunk, total_ % chunks);
  uint64_t hi = lo + total_ / chunks + (chunk < total_ % chunks ? 1 : 0);

  uint32_t deg = ctx_->degree;
  uint64_t p = ctx_->p;
  std::vector<FFElement> point(n_, ctx_->zero());
  // decode lo into the odometer: element t holds digits [t*deg, (t+1)*deg)
  uint64_t k = lo;
  for (uint32_t t = 0; t < n_; ++t) {
    uint64_t q = ctx_->order();
    point[t] = ctx_->element_at(k % q);
    k /= q;
  }
  for (uint64_t idx = lo; idx < hi; ++idx) {
    fn(point);
    // increment
    for (uint32_t t = 0; t < n_; ++t) {
      bool carry = true;
      for (uint32_t i = 0; i < deg && carry; ++i) {
        if (++point[t][i] == p) {
          point[t][i] = 0;
        } else {
          carry = false;
        }
      }
      if (!carry) break;
    }
  }
}

}  // namespace lcong::ff
