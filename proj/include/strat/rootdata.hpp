#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strat/linalg.hpp"
#include "strat/rational.hpp"

namespace strat {

enum class Family { GL, SL, Sp, GSp };

std::string family_name(Family f);

/// Which automorphism twists the group.  `dual` is the order-2 lattice
/// automorphism v ↦ -w0(v) of GL_n/SL_n (the unique nontrivial diagram
/// automorphism for n >= 3, and its rank-2 analogue where the diagram map is
/// trivial but the lattice map is not).  Type C admits only the identity.
enum class SigmaKind { identity, dual };

struct GroupSpec {
  Family family = Family::GL;
  int rank = 0; // matrix size: n for GL_n/SL_n, 2n for Sp_2n/GSp_2n
  SigmaKind sigma = SigmaKind::identity;
};

/**
 * Concrete root datum of a split classical group, everything in explicit
 * ambient coordinates:
 *   GL_n : X_* = Z^n, roots e_i - e_j (positive iff i < j);
 *   SL_n : same coordinates, X_* is the sum-zero sublattice;
 *   Sp_2n: X_* = Z^n, type C_n (long roots 2e_i, coroot e_i);
 *   GSp_2n: X_* = Z^(n+1) with a similitude coordinate last; type C_n with
 *           long roots 2e_i - e_c.
 * Cocharacters and rational cocharacters are plain vectors of length `dim`;
 * for SL_n membership in X_*(T) additionally means coordinate sum zero
 * (`cochar_rank` records the true lattice rank, `cochar_basis` a Z-basis).
 */
struct RootDatum {
  Family family;
  int rank;        // matrix-size parameter from the GroupSpec
  int dim;         // ambient coordinate dimension
  int ss_rank;     // number of simple roots
  int cochar_rank; // rank of X_*(T) as a free Z-module

  std::vector<IntVec> roots;   // all roots, positives first, then negatives
  std::vector<IntVec> coroots; // parallel list
  std::vector<int> simple_indices;   // indices into roots
  std::vector<int> positive_indices; // indices into roots (0..P-1)

  std::vector<IntVec> cochar_basis;  // rows form a Z-basis of X_*(T)
  IntMat coroot_lattice_basis;       // rows span the coroot lattice

  IntMat sigma_cochar; // action of sigma on X_*(T) (ambient coords)
  IntMat sigma_char;   // contragredient action on X^*(T)
  int sigma_order;     // order of sigma_cochar
  SigmaKind sigma_kind;

  int n_pos() const { return (int)positive_indices.size(); }
  const IntVec &pos_root(int k) const { return roots[positive_indices[k]]; }
  const IntVec &pos_coroot(int k) const { return coroots[positive_indices[k]]; }
  const IntVec &simple_root(int i) const { return roots[simple_indices[i]]; }
  const IntVec &simple_coroot(int i) const { return coroots[simple_indices[i]]; }
};

using Cochar = IntVec;
using RatCochar = RatVec;

RootDatum build_root_datum(const GroupSpec &spec);

/// Standard dot-product pairing between X^* and X_* in coordinates.
long long pairing(const RootDatum &datum, const IntVec &chi, const Cochar &v);
Rat pairing(const RootDatum &datum, const IntVec &chi, const RatCochar &v);

bool is_dominant(const RootDatum &datum, const Cochar &v);
bool is_dominant(const RootDatum &datum, const RatCochar &v);

/**
 * The unique dominant W-orbit representative, together with the sequence of
 * simple reflections applied (as raw indices, first-applied first; not
 * necessarily a reduced word — module weyl canonicalizes when needed).
 */
struct DominantRep {
  RatCochar vplus;
  std::vector<int> raw_word;
};
DominantRep dominant_representative(const RootDatum &datum, const RatCochar &v);

Cochar sigma_apply(const RootDatum &datum, const Cochar &v);
RatCochar sigma_apply(const RootDatum &datum, const RatCochar &v);
/// Inverse of sigma on cocharacters (sigma has finite order).
Cochar sigma_apply_inv(const RootDatum &datum, const Cochar &v);
/// Action on the character side, contragredient to sigma_cochar.
IntVec sigma_apply_char(const RootDatum &datum, const IntVec &chi);

/// Reflection s_alpha acting on X_*: v -> v - <alpha, v> alpha^vee.
IntMat reflection_matrix(const RootDatum &datum, const IntVec &alpha,
                         const IntVec &alpha_vee);

/// True iff v lies in X_*(T) (sum-zero check for SL; length check everywhere).
bool in_cochar_lattice(const RootDatum &datum, const Cochar &v);

/// Coordinates of an X_*(T) element in cochar_basis; throws if v is not in
/// the lattice.
IntVec cochar_in_basis(const RootDatum &datum, const Cochar &v);

/**
 * Flat text group description, one `key=value` per line:
 *   family=GL|SL|Sp|GSp
 *   rank=3
 *   sigma=identity | sigma=dual | sigma=perm:2,1   (1-based image list)
 *   mu=1,0,0                                        (optional)
 * '#' starts a comment.  A permutation must preserve the Cartan matrix; the
 * only nontrivial case is the type-A reversal, which maps to SigmaKind::dual
 * (for rank 2 use `sigma=dual`, where the diagram permutation is trivial).
 */
struct SpecFile {
  GroupSpec group;
  std::optional<Cochar> mu;
};
SpecFile parse_spec_file(const std::string &text);

} // namespace strat
