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
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "lcong/errors.hpp"

namespace lcong::ff {

/// Element of a finite field, as the coefficient vector of a residue
/// polynomial.  Length always equals the degree of the owning context;
/// entries lie in [0, p).
using FFElement = std::vector<uint32_t>;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// An explicit finite field F_{p^degree} = F_p[x]/(modulus), immutable after
/// construction.  Extensions built with extend_field() keep a pointer to the
/// base field together with the image of its generator, so base-field
/// constants embed consistently.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  uint64_t p;
  uint32_t degree;                  // absolute degree over F_p
  std::vector<uint32_t> modulus;    // monic, length degree+1, coefficients in [0,p)
  FieldPtr base;                    // nullptr for directly constructed fields
  FFElement base_generator_image;   // root of base->modulus in this field

  uint64_t order() const;           // p^degree, must fit in 64 bits

  FFElement zero() const { return FFElement(degree, 0); }
  FFElement one() const;
  FFElement from_uint(uint64_t c) const;  // image of an integer (prime subfield)
  FFElement generator() const;            // the class of x

  FFElement add(const FFElement& a, const FFElement& b) const;
  FFElement sub(const FFElement& a, const FFElement& b) const;
  FFElement neg(const FFElement& a) const;
  FFElement mul(const FFElement& a, const FFElement& b) const;
  FFElement pow(const FFElement& a, uint64_t e) const;
  FFElement inv(const FFElement& a) const;
  bool is_zero(const FFElement& a) const;

  /// Image in this field of an element of the base field.
  FFElement embed_from_base(const FFElement& a) const;

  /// Tr_{F_{p^degree}/F_p}.
  uint32_t trace_to_prime(const FFElement& a) const;

  /// Decode the k-th element in enumeration order (base-p odometer over the
  /// coefficient vector, constant coefficient least significant).
  FFElement element_at(uint64_t k) const;

 private:
  friend FieldPtr make_field(uint64_t, uint32_t);
  friend FieldPtr extend_field(const FieldPtr&, uint32_t);
  FieldCtx() = default;
  void finalize();  // trace table, embedding powers

  std::vector<uint32_t> trace_row_;                 // trace of basis monomials
  std::vector<FFElement> base_gen_image_powers_;    // img^0 .. img^{base deg - 1}
};

/// Field with the lexicographically least monic irreducible modulus of the
/// given degree (non-leading coefficients compared highest degree first).
/// Deterministic across runs and platforms.
FieldPtr make_field(uint64_t p, uint32_t degree);

/// Degree-r extension with a stored embedding of the base generator: the
/// least root (coefficient vectors compared from the constant term up) of
/// base->modulus in the new field.
FieldPtr extend_field(const FieldPtr& base, uint32_t r);

uint32_t trace_to_prime(const FieldCtx& ctx, const FFElement& a);

/// Multivariate polynomial with few terms; exponents d in N^n, coefficients
/// in a fixed field.
struct SparsePoly {
  uint32_t n = 0;
  FieldPtr coeff_field;
  std::vector<std::pair<std::vector<uint32_t>, FFElement>> terms;  // sorted by exponent

  /// Total number of variables consistent, exponents sorted and distinct.
  void validate() const;
};

/// Sum_d c_d x^d at a point of an extension of the coefficient field.
/// The coefficients are embedded through the stored base chain.
FFElement eval_poly(const SparsePoly& f, const FieldCtx& ctx,
                    const std::vector<FFElement>& x);

/// Streaming enumeration of A^n(F_{p^degree}) in a fixed deterministic
/// order, split into `chunks` contiguous ranges for data-parallel use.
/// Throws budget_error if p^{degree*n} exceeds `budget`.
class PointStream {
 public:
  PointStream(FieldPtr ctx, uint32_t n, uint64_t budget = kDefaultBudget);

  uint64_t size() const { return total_; }
  uint32_t dimension() const { return n_; }

  /// Visit every point of chunk `chunk` (0-based) out of `chunks`.
  void for_each_in_chunk(uint64_t chunk, uint64_t chunks,
                         const std::function<void(const std::vector<FFElement>&)>& fn) const;

  void for_each(const std::function<void(const std::vector<FFElement>&)>& fn) const {
    for_each_in_chunk(0, 1, fn);
  }

  static constexpr uint64_t kDefaultBudget = 10'000'000;

 private:
  FieldPtr ctx_;
  uint32_t n_;
  uint64_t total_;
};

}  // namespace lcong::ff
