#pragma once

#include <string>
#include <vector>

#include "strat/weyl.hpp"

namespace strat {

/**
 * Image of an extended affine Weyl group element t^lambda * w in the
 * semidirect product X_*(T) x W; the finite part is a WeylGroup index.
 */
struct AffineElement {
  Cochar translation;
  int finite_part = 0;
};

/// Canonical coordinates of an element of a presented finite-type abelian
/// group (see Pi1Data): torsion coordinates reduced mod their divisor, free
/// coordinates exact integers.  Only compare points from the same Pi1Data.
struct KottwitzPoint {
  IntVec value;
  bool operator==(const KottwitzPoint &o) const { return value == o.value; }
  bool operator!=(const KottwitzPoint &o) const { return !(*this == o); }
  bool operator<(const KottwitzPoint &o) const { return value < o.value; }
};

/**
 * The sigma-coinvariants of X_*(T) modulo a coroot lattice, presented as the
 * cokernel of the integer matrix [coroot generators | (sigma - 1) basis] in
 * cocharacter-basis coordinates and brought to Smith normal form.  Passing
 * the simple coroots of the full group gives pi_1(G)_<sigma>; passing the
 * coroots of a Levi subgroup gives pi_1(M)_<sigma> on the same lattice.
 */
class Pi1Data {
public:
  Pi1Data(const RootDatum &datum, const std::vector<IntVec> &coroot_generators);
  static Pi1Data for_group(const RootDatum &datum);

  const RootDatum &datum() const { return *datum_; }
  /// One entry per quotient coordinate: d > 1 torsion, d = 1 trivial, 0 free.
  const std::vector<long long> &divisors() const { return divisors_; }
  int free_rank() const { return (int)free_rows_.size(); }
  /// The divisors > 1 (the interesting torsion), in SNF order.
  std::vector<long long> invariant_factors() const;
  /// Human-readable group shape: "0", "Z", "Z/2", "Z + Z/2", ...
  std::string group_str() const;

  KottwitzPoint canonical_form(const Cochar &lambda) const;
  /// Values of the free coordinates on a rational cocharacter (the image in
  /// the quotient tensored with Q, where torsion dies).
  RatVec free_part(const RatCochar &v) const;

private:
  const RootDatum *datum_;
  IntMat reduce_; // rows map cochar-basis coordinates to quotient coordinates
  std::vector<long long> divisors_;
  std::vector<int> free_rows_;
};

KottwitzPoint kottwitz_point(const Pi1Data &pi1, const AffineElement &a);
KottwitzPoint mu_natural(const Pi1Data &pi1, const Cochar &mu);

/**
 * Newton point of t^lambda * w: with A = (action of w) composed with sigma,
 * n minimal such that A^n = 1 and ord(sigma) | n, the dominant representative
 * of (1/n) * sum
 * of A^i(lambda) over i < n.  Output is asserted dominant and
 * sigma-invariant.
 */
RatCochar newton_point(const WeylGroup &w, const AffineElement &a);

/// sigma-orbit average of a dominant cocharacter; errors if mu not dominant.
RatCochar mu_bar(const RootDatum &datum, const Cochar &mu);

} // namespace strat
