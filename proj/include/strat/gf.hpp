#pragma once

#include <cstdint>
#include <vector>

namespace strat {

/**
 * The finite field GF(p^k) for p in {2, 3} and 1 <= k <= 12, presented as
 * F_p[x]/(f) for a fixed primitive polynomial f (tables in gf.cpp; audit or
 * regenerate them with tools/gen_primitive_polys.py).  An element is a code
 * below p^k packing its coefficient vector base p: sum c_i x^i has code
 * sum c_i p^i, so 0 and 1 are the ring constants and p is the class of x.
 * Multiplication runs on exp/log tables with respect to the generator x; the
 * constructor fills the log table bijectively, which re-proves primitivity
 * of the table polynomial on every construction.
 */
class GFField {
public:
  GFField(int p, int k);

  int p() const { return p_; }
  int degree() const { return k_; }
  uint32_t size() const { return size_; } // p^k
  /// The class of x: code p for k >= 2, the residue -c_0 for k = 1.
  uint32_t generator() const { return gen_; }
  /// Coefficients c_0..c_k of the defining polynomial.
  const std::vector<int> &modulus() const { return modulus_; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const; // throws on 0
  /// Discrete log base x: the i in [0, p^k-1) with x^i = a; throws on 0.
  uint32_t log(uint32_t a) const;
  /// a^e with e of any sign; 0^0 = 1, 0^negative throws.
  uint32_t pow(uint32_t a, long long e) const;
  /// Frobenius iterate a -> a^(p^j), j >= 0.
  uint32_t frob_power(uint32_t a, int j) const;
  /// The prime-field element c mod p.
  uint32_t from_int(long long c) const;

private:
  int p_ = 0, k_ = 0;
  uint32_t size_ = 0, n_ = 0; // n_ = size_ - 1, the unit-group order
  uint32_t gen_ = 0;
  std::vector<int> modulus_;
  std::vector<uint32_t> exp_, log_;
};

/**
 * A field embedding GF(p^a) -> GF(p^b) for a | b, sending the small field's
 * x to the smallest-code root of the small modulus inside the big field.
 * Any root choice lands in the same (unique) subfield and commutes with
 * Frobenius; fixing the smallest keeps runs deterministic.  When the two
 * fields have equal degree the map is the identity.  Both fields must
 * outlive the embedding.
 */
class GFEmbedding {
public:
  GFEmbedding(const GFField &from, const GFField &to);
  const GFField &from() const { return *from_; }
  const GFField &to() const { return *to_; }
  uint32_t operator()(uint32_t a) const;

private:
  const GFField *from_, *to_;
  std::vector<uint32_t> xpow_; // images of x^0 .. x^(a-1)
};

} // namespace strat
