#pragma once

#include <optional>
#include <vector>

#include "strat/rational.hpp"

namespace strat {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>; // row-major; acts on column vectors
using RatMat = std::vector<RatVec>;

IntMat identity_mat(int n);
IntMat mat_mul(const IntMat &a, const IntMat &b);
IntVec mat_apply(const IntMat &m, const IntVec &v);
RatVec mat_apply(const IntMat &m, const RatVec &v);
IntMat mat_transpose(const IntMat &m);
bool mat_eq(const IntMat &a, const IntMat &b);
IntMat mat_pow(const IntMat &m, int k);

long long dot(const IntVec &a, const IntVec &b);
Rat dot(const IntVec &a, const RatVec &b);

IntVec vec_add(const IntVec &a, const IntVec &b);
IntVec vec_sub(const IntVec &a, const IntVec &b);
RatVec vec_add(const RatVec &a, const RatVec &b);
RatVec vec_sub(const RatVec &a, const RatVec &b);
RatVec vec_scale(const RatVec &a, const Rat &c);
RatVec to_ratvec(const IntVec &v);

/**
 * Exact solution of A x = b over the rationals (A given as rows).
 * Returns std::nullopt when the system is inconsistent.  When the solution
 * space is positive-dimensional an arbitrary but deterministic member is
 * returned (free variables set to zero).
 */
std::optional<RatVec> rat_solve(const RatMat &a, const RatVec &b);

/**
 * Basis of the right null space { x : A x = 0 } over the rationals,
 * deterministic (one vector per free column of the reduced echelon form).
 */
std::vector<RatVec> rat_nullspace(const RatMat &a);

/**
 * Smith normal form of an integer matrix: U * A * V = D with U, V unimodular
 * and D diagonal, d1 | d2 | ... | dk >= 0 (trailing zeros allowed).
 * u_inv is maintained alongside U so that lattice bases can be read off
 * without a separate inversion.
 */
struct SmithForm {
  IntMat u;     // rows x rows
  IntMat u_inv; // rows x rows
  IntMat v;     // cols x cols
  IntMat d;     // rows x cols, diagonal
  std::vector<long long> divisors; // diagonal of d, length min(rows, cols)
};
SmithForm smith_normal_form(const IntMat &a);

} // namespace strat
