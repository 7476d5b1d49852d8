#pragma once

#include <utility>
#include <vector>

#include "strat/bgmu.hpp"

namespace strat {

/// One stratum label: an element of ^J W (as a WeylGroup index) with its
/// parabolic type and Coxeter length (the stratum dimension).
struct EOLabel {
  int w = 0;
  ParabolicType J;
  int length = 0;
};

/// The labelled stratification for one (group, mu): the parabolic type J
/// computed from mu, the poset of minimal coset representatives under the
/// refined order, and one label per representative (parallel arrays).
struct EOStratification {
  ParabolicType J;
  EOPoset poset;
  std::vector<EOLabel> labels;
};

/// J = { i : s_i fixes the dominant character datum sigma^{-1}(mu) },
/// i.e. the simple indices pairing to zero with it.  mu must be dominant.
ParabolicType type_J(const RootDatum &datum, const Cochar &mu);

/// ^J W with the refined partial order and per-element labels.
EOStratification eo_labels(const WeylGroup &w, const Cochar &mu);

/// Positions (within s.poset.elements) of every label below the one at
/// `pos`, the combinatorial closure of that stratum.
std::vector<int> closure_set(const EOStratification &s, int pos);

/**
 * Canonical stratum representative, reduced to its image in X_*(T) x W:
 * with u = w * w_0 * sigma(w_{0,J}), the element t^{u(mu)} * u.  Torus-part
 * lift choices are invisible at this level.  Requires w in ^J W.
 */
AffineElement eo_representative(const WeylGroup &w, const Cochar &mu, int w_elt);

/**
 * Newton/Kottwitz invariants of the canonical representative — one
 * sigma-conjugacy class guaranteed to meet the stratum.  The result is
 * located inside the enumerated B(G, mu); absence is an internal
 * consistency error.
 */
NewtonClass eo_to_newton(const WeylGroup &w, const Cochar &mu, int w_elt);

/// eo_to_newton for every label of eo_labels(w, mu) in order, sharing one
/// B(G, mu) enumeration.
std::vector<NewtonClass> eo_newton_table(const WeylGroup &w, const Cochar &mu);

/**
 * The two representative systems for the zip orbits, parallel to the labels:
 * frame[i] = w_{0,J} * w_i * w_0 and twisted[i] = w_i * w_0 * sigma(w_{0,J})
 * (the finite part of eo_representative).  Construction asserts the stated
 * relation frame[i] = w_{0,J} * twisted[i] * sigma(w_{0,J})^{-1}.
 */
struct ZipOrbitReps {
  std::vector<int> frame;
  std::vector<int> twisted;
};
ZipOrbitReps zip_orbit_representatives(const WeylGroup &w, const Cochar &mu);

/**
 * Diagnostic only (no theorem claims this is empty): label-position pairs
 * (i, j) with i strictly below j in the refined order whose Newton classes
 * are incomparable in both directions.
 */
std::vector<std::pair<int, int>> eo_order_anomalies(const WeylGroup &w,
                                                    const Cochar &mu);

} // namespace strat
