#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "strat/gf.hpp"
#include "strat/linalg.hpp"

namespace strat {

/// Ring element of F_{q^m}[t]/(t^N): field-element codes, coefficient of t^k
/// at index k, always exactly N entries.
using RingElt = std::vector<uint32_t>;

/**
 * The truncated loop-group coefficient ring F_{q^m}[t]/(t^N) with sigma
 * acting coefficientwise as the q-power Frobenius (sigma(t) = t, sigma^m =
 * identity).  q = p^e must be a power of 2 or 3 with e*m <= 12 so the field
 * fits the table in module gf; fields are cached and shared, so rings copy
 * cheaply.
 */
class TruncRing {
public:
  TruncRing(int q, int m, int N);

  int q() const { return q_; }
  int m() const { return m_; }
  int N() const { return N_; }
  int p() const { return p_; }
  int e() const { return e_; } // q = p^e
  const GFField &field() const { return *field_; }

  RingElt zero() const { return RingElt(N_, 0); }
  RingElt one() const { return from_field(1); }
  RingElt from_field(uint32_t c) const;
  /// t^k; zero when k >= N.  Negative k is rejected: everything lives in O.
  RingElt t_power(int k) const;

  RingElt add(const RingElt &a, const RingElt &b) const;
  RingElt sub(const RingElt &a, const RingElt &b) const;
  RingElt neg(const RingElt &a) const;
  RingElt mul(const RingElt &a, const RingElt &b) const;
  bool is_unit(const RingElt &a) const { return a[0] != 0; }
  /// Inverse of a unit; throws invalid_argument otherwise.
  RingElt inv(const RingElt &a) const;
  RingElt sigma(const RingElt &a) const;
  /// Index of the lowest nonzero coefficient; N for the zero element.
  int valuation(const RingElt &a) const;

private:
  int q_ = 0, m_ = 0, N_ = 0, p_ = 0, e_ = 0;
  std::shared_ptr<const GFField> field_;
};

/// n x n matrix over a TruncRing, row-major entries.
struct LoopMat {
  int n = 0;
  std::vector<RingElt> a; // n*n entries
  RingElt &at(int i, int j) { return a[(size_t)i * n + j]; }
  const RingElt &at(int i, int j) const { return a[(size_t)i * n + j]; }
  bool operator==(const LoopMat &) const = default;
};

LoopMat mat_zero(const TruncRing &r, int n);
LoopMat mat_identity(const TruncRing &r, int n);
LoopMat mat_mul(const TruncRing &r, const LoopMat &x, const LoopMat &y);
LoopMat mat_sigma(const TruncRing &r, const LoopMat &x);
/// Inverse over the truncated ring; nullopt when the residue matrix mod t is
/// singular (i.e. x is not in K).
std::optional<LoopMat> mat_inverse(const TruncRing &r, const LoopMat &x);
/// Entries as coefficient lists: "[[[c0,c1],...],...]" (row-major, JSON).
std::string mat_str(const LoopMat &x);

/// K: residue invertible; K1: congruent to 1 mod t; I: residue upper
/// triangular and invertible.  The three flags are independent reads of g.
struct MembershipFlags {
  bool in_K = false, in_K1 = false, in_I = false;
};
MembershipFlags membership(const TruncRing &r, const LoopMat &g);
/// g in K with entry (i,j) divisible by t^{max(0, chi_j - chi_i)}, the
/// congruence subgroup K_chi = K n chi(t)^{-1} K chi(t).
bool in_K_chi(const TruncRing &r, const LoopMat &g, const IntVec &chi);

/// Identity plus x at position (i, j), i != j: the root subgroup element
/// U_{e_i - e_j}(x).
LoopMat root_element(const TruncRing &r, int n, int i, int j, const RingElt &x);
/// diag(t^{mu_1}, ..., t^{mu_n}); entries must be >= 0.
LoopMat t_diag(const TruncRing &r, const IntVec &mu);
/// The monomial matrix of t^lambda * w: entry (perm[j], j) = t^{lambda_{perm[j]}}
/// where perm[j] is the index of w(e_j).
LoopMat monomial_matrix(const TruncRing &r, const IntVec &lambda,
                        const std::vector<int> &perm);

/**
 * Block factorization c = u_minus * u_plus * m0 for c in K_chi, chi dominant:
 * u_minus lower block-unipotent with the K_chi valuation bounds (hence in
 * K1), u_plus upper block-unipotent over O, m0 block diagonal invertible,
 * blocks being the level sets of chi.  Throws invalid_argument("not in
 * K_chi") when membership fails or a pivot block is singular mod t.
 */
struct IwahoriFactors {
  LoopMat u_minus, u_plus, m0;
};
IwahoriFactors iwahori_factorize(const TruncRing &r, const LoopMat &c,
                                 const IntVec &chi);

/**
 * Valuations of the elementary divisors of g (the dominant lambda with
 * g in K t^lambda K), from minimal valuations of k x k minors.  nullopt when
 * det g vanishes mod t^N — then the divisors are not determined at this
 * truncation and the caller must raise N.
 */
std::optional<IntVec> cartan_invariant(const TruncRing &r, const LoopMat &g);
/// cartan_invariant(g * sigma(g) * ... * sigma^{steps-1}(g)) / steps, the
/// step-count approximation of the Newton point; nullopt on precision loss.
std::optional<RatVec> newton_invariant(const TruncRing &r, const LoopMat &g,
                                       int steps);
/// h * g * sigma(h)^{-1}; throws invalid_argument when h is not invertible.
LoopMat sigma_conjugate(const TruncRing &r, const LoopMat &h, const LoopMat &g);

/// Ring extension map F_{q^m}[t]/(t^N) -> F_{q^m'}[t]/(t^N) for m | m',
/// coefficientwise along the canonical-root field embedding.
class RingEmbedding {
public:
  RingEmbedding(const TruncRing &from, const TruncRing &to);
  const TruncRing &from() const { return *from_; }
  const TruncRing &to() const { return *to_; }
  RingElt apply(const RingElt &a) const;
  LoopMat apply(const LoopMat &x) const;

private:
  const TruncRing *from_, *to_;
  GFEmbedding phi_;
};

/**
 * Solution of the torus Lang equation h^{-1} sigma(h) = c for c a diagonal
 * unit matrix: coefficient fields are escalated through multiples m' of m
 * (with e*m' <= 12) up to m_cap; per coordinate the residue level solves
 * x^{q-1} = c_0 by discrete log and each t-adic level solves an
 * Artin-Schreier equation z^q - z = rho by F_p-linear algebra.  nullopt when
 * no multiple within m_cap admits a solution — never a silent failure.
 */
struct TorusLang {
  TruncRing ring; // the extension the solution lives in
  LoopMat h;
  int m_used = 0;
};
std::optional<TorusLang> solve_torus_lang(const TruncRing &r, const LoopMat &c,
                                          int m_cap);

/**
 * Search for h with h * g * sigma(h)^{-1} = t^mu over extensions of the base
 * ring.  The equation h*g = t^mu * sigma(h) is F_p-linear in h, so per
 * extension degree the solution set is the kernel of an explicit F_p-matrix;
 * the search enumerates that kernel exhaustively when p^dim fits the cap
 * (making a miss a proof that no conjugator exists at this degree) and
 * otherwise samples seeded random kernel combinations.  A found h is
 * re-verified by direct multiplication before being returned.
 */
struct ConjugatorOptions {
  bool in_iwahori = false; // constrain h to I instead of K
  // Every degree through 12, not just divisors of 12: over F_2 the
  // level-by-level obstructions are Artin-Schreier towers, so conjugators
  // routinely first appear at the 2-power degree 8.  Non-multiples of the
  // base degree m are skipped.
  std::vector<int> m_schedule = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  long long exhaustive_cap = 1 << 20; // enumerate kernel fully when p^dim <= cap
  int random_tries = 20000;
  uint64_t seed = 20260822;
};
enum class ConjugatorStatus {
  found,
  unresolved, // search space not exhausted; existence undecided at this level
  exhausted,  // every schedule degree enumerated completely: no conjugator
};
struct ConjugatorResult {
  ConjugatorStatus status = ConjugatorStatus::unresolved;
  int m_used = 0;              // meaningful when found
  std::optional<TruncRing> ring; // extension ring of h when found
  LoopMat h;
};
ConjugatorResult find_sigma_conjugator(const TruncRing &r, const LoopMat &g,
                                       const IntVec &mu,
                                       const ConjugatorOptions &opt = {});

/// Deterministic sampling helper: bounded draws from a seeded mt19937_64.
/// (Modulo reduction; the negligible bias is irrelevant for verification
/// sampling and keeps draws identical across standard libraries.)
struct LoopRng {
  std::mt19937_64 gen;
  explicit LoopRng(uint64_t seed) : gen(seed) {}
  uint64_t below(uint64_t bound) { return gen() % bound; }
};

RingElt random_ring_elt(const TruncRing &r, LoopRng &rng);
/// Uniform over K (residue resampled until invertible).
LoopMat random_K(const TruncRing &r, int n, LoopRng &rng);
/// Uniform over K1 = 1 + t M_n(O/t^{N-1}).
LoopMat random_K1(const TruncRing &r, int n, LoopRng &rng);
/// Uniform over I (residue upper triangular with unit diagonal entries).
LoopMat random_I(const TruncRing &r, int n, LoopRng &rng);

} // namespace strat
