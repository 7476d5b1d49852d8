#pragma once

#include <string>
#include <vector>

#include "strat/affine.hpp"

namespace strat {

/// One sigma-conjugacy class invariant pair: dominant sigma-invariant Newton
/// vector plus Kottwitz point (always taken in the same Pi1Data).
struct NewtonClass {
  RatCochar nu;
  KottwitzPoint kappa;
};

/**
 * B(G, mu) with its partial order, elements sorted lexicographically by nu
 * (so the basic class comes first and the maximal class last for the
 * classical families).  Construction verifies: unique maximal element with
 * nu = mu_bar, unique minimal = unique basic element, and kappa = mu_natural
 * throughout; violations throw.
 */
struct BGmuPoset {
  std::vector<NewtonClass> elements;
  std::vector<std::vector<bool>> leq;
  int max_index = -1;
  int basic_index = -1;
};

/**
 * Dominance order on Newton vectors: nu_prime below nu iff nu - nu_prime is
 * a nonnegative rational combination of positive coroots.  Decided by two
 * half-checks: equality against every (W, sigma)-invariant functional (the
 * central components match — unequal ones throw "incomparable"), then
 * nonnegativity against fundamental weights of the derived group.
 */
bool newton_leq(const RootDatum &datum, const RatCochar &nu_prime, const RatCochar &nu);

/**
 * Enumerate B(G, mu) from monomial representatives: the invariant pairs of
 * t^lambda * w, deduplicated, with lambda running over every dominant
 * lattice cocharacter satisfying kappa(lambda) = mu_natural and
 * lambda_bar <= mu_bar.  (The W-orbit of mu alone is not enough: a class
 * whose slopes regroup the entries of mu across sigma-blocks — already
 * nu = (3/2, 3/2, 1/2, 1/2) in B(GL_4, (2,2,0,0)) — has no monomial
 * representative over that orbit.  Every class does have one over the
 * enlarged domain: balance its canonical Levi-basic datum into an integral
 * vector block by block.)  For untwisted GL/SL the result is additionally
 * cross-checked against the independent Newton-polygon oracle below; any
 * mismatch is a hard error.
 */
BGmuPoset enumerate_bgmu(const WeylGroup &w, const Cochar &mu);

NewtonClass b_max(const WeylGroup &w, const Cochar &mu);
NewtonClass basic_element(const WeylGroup &w, const Cochar &mu);

/**
 * Definitional oracle for untwisted GL_n/SL_n: all concave lattice paths
 * from (0,0) to (n, |mu|) with integer-height vertices, lying weakly below
 * the path of mu, read off as slope vectors.  Independent of the
 * representative enumeration above.
 */
std::vector<RatCochar> polygon_oracle(const RootDatum &datum, const Cochar &mu);

/// Partial-sum comparison for the oracle's order: every prefix sum of a is
/// <= that of b, with equal totals.
bool polygon_leq(const RatCochar &a, const RatCochar &b);

/**
 * The Levi subgroup M = Cent_G(v) of a sigma-invariant vector: its roots
 * (as indices into the positive list of the ambient datum), the subgroup
 * W_M inside the ambient Weyl group, and a simple system of indecomposable
 * positive roots used for M-dominance.
 */
struct LeviDatum {
  const WeylGroup *weyl = nullptr;
  RatCochar center;
  std::vector<int> pos_roots;    // positive-list indices with <alpha, v> = 0
  std::vector<int> simple_roots; // indecomposables, subset of pos_roots
  std::vector<int> wm_elements;  // W_M as ambient element indices
  bool is_full() const { return (int)pos_roots.size() == weyl->datum().n_pos(); }
};

LeviDatum levi_centralizer(const WeylGroup &w, const RatCochar &v);

/// pi_1(M)_<sigma> on the ambient cocharacter lattice.
Pi1Data levi_pi1(const LeviDatum &m);

/**
 * Centrality of mu(t) in M = Cent(mu_bar), verified summand by summand:
 * for each alpha in Phi_M^+ the values <alpha, sigma^i(mu)> are individually
 * nonnegative and sum to zero, forcing <alpha, mu> = 0.  A violation would
 * contradict the underlying theory and throws.
 */
struct CentralityWitness {
  int pos_root_index;
  std::vector<long long> summands; // <alpha, sigma^i(mu)> for i < ord(sigma)
};
std::vector<CentralityWitness> mu_central_in_levi(const WeylGroup &w, const Cochar &mu);

/// Projection V -> V_M: sigma-orbit average followed by W_M-orbit average.
RatCochar project_to_VM(const LeviDatum &m, const RatCochar &v);

/// Is v in V_M at all (fixed by W_M and sigma)?  in_VM_plus requires it.
bool in_VM(const LeviDatum &m, const RatCochar &v);

/// Strict positivity on the roots outside M; errors if v is not in V_M.
bool in_VM_plus(const LeviDatum &m, const RatCochar &v);

/// M-dominant representative: reflect at violated indecomposable roots of M.
RatCochar m_dominant_representative(const LeviDatum &m, const RatCochar &v);

/// Newton point of b0 computed in M (finite part must lie in W_M), returned
/// M-dominant rather than G-dominant.
RatCochar m_newton_point(const LeviDatum &m, const AffineElement &b0);

/**
 * The Hodge-Newton hypotheses for the pair (lambda, b0) relative to M:
 *  (a) kappa_M(b0) = image of lambda in pi_1(M)_<sigma>;
 *  (b) the slope image project_to_VM(b0.translation) lies in V_M^+;
 *  (c) the M-dominant Newton point of b0 is also G-dominant.
 * Preconditions (throw): lambda G-dominant, b0.finite_part in W_M.
 */
struct HNReport {
  bool applicable = false;
  bool kappa_matches = false;     // (a)
  bool slope_in_vm_plus = false;  // (b)
  bool newton_g_dominant = false; // (c)
  KottwitzPoint kappa_m_b0, kappa_m_lambda;
  RatCochar vm_image;
  RatCochar m_newton;
};
HNReport hn_applicable(const LeviDatum &m, const Cochar &lambda, const AffineElement &b0);

} // namespace strat
