#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strat/loopgrp.hpp"

namespace strat {

/**
 * Parameters of a truncated sigma-conjugacy verification run.  The base
 * coefficient field is F_q; conjugator searches escalate through the
 * extension degrees in m_schedule, and torus Lang equations escalate up to
 * lang_m_cap.  mu must be dominant with nonnegative entries and |mu| < N so
 * every Cartan/Newton computation stays inside the precision budget; the
 * matrix size is mu.size().
 */
struct VerifySpec {
  int q = 2;
  int m = 1; // base field F_{q^m}
  int N = 2;
  IntVec mu;
  long long samples = 100;
  uint64_t seed = 20260822;
  std::vector<int> m_schedule = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  /// Enumerate the full double coset instead of sampling it; a failed search
  /// is then a hard failure instead of UNRESOLVED.
  bool exhaustive = false;
  long long exhaustive_cap = 1 << 20; // kernel sweep bound, as in ConjugatorOptions
  int random_tries = 20000;
  int lang_m_cap = 12;
};

/// One recorded event: a found conjugator chain, an escalation that ran out
/// of schedule, or a hard failure, as named matrix/value pairs.
struct Witness {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;
};

/**
 * Outcome of one experiment.  samples = number of distinct inputs examined
 * (the deduplicated coset size in exhaustive mode); found + unresolved +
 * hard_failures = samples.  UNRESOLVED means the finite search could not
 * decide an existence question over the algebraic closure — it is reported,
 * never silently dropped.  hard_failures are outcomes the underlying
 * statement forbids; any nonzero count is a verification failure.
 */
struct ExperimentReport {
  std::string experiment;
  VerifySpec spec;
  long long samples = 0;
  long long found = 0;
  long long unresolved = 0;
  long long hard_failures = 0;
  std::vector<Witness> witnesses;
};

/// An explicit reduction chain g = c^{-1} (m')^{-1} t^mu sigma(m') sigma(c),
/// everything over the extension ring the Lang step landed in.
struct HnChain {
  TruncRing ring;
  LoopMat g, c, m_prime;
};

/**
 * The chain for a single h in K: g = h^{-1} t^mu sigma(h), the diagonal
 * split h = m c, and a Lang solution m' for m^{-1} sigma(m), everything
 * embedded into the ring the Lang step landed in.  nullopt when no Lang
 * solution exists within m_cap.  Construction only — callers verify the
 * chain identity by direct multiplication.
 */
std::optional<HnChain> hn_reduce(const TruncRing &r, const IntVec &mu,
                                 const LoopMat &h, int m_cap);

/**
 * Experiment A: g in K1 t^mu K1, search h in K with h g sigma(h)^{-1} =
 * t^mu over the schedule.  Sampled by multiplying uniform factors, or the
 * full deduplicated double coset when spec.exhaustive is set (the factor
 * groups must then stay below the enumeration guard).
 */
ExperimentReport run_experiment_A(const VerifySpec &spec);
/// Experiment B: the Iwahori variant — g in I t^mu I, conjugator sought in I.
ExperimentReport run_experiment_B(const VerifySpec &spec);
/**
 * Experiment C: g = k t^mu sigma(k)^{-1} for uniform k in K; checks
 * cartan_invariant(g) = mu and newton_invariant(g) = the sigma-averaged mu,
 * at the largest step count the precision budget allows.  Any mismatch is a
 * hard failure.
 */
ExperimentReport run_experiment_C(const VerifySpec &spec);

/// The three sub-experiments A, B, C in order, with seeds derived from
/// spec.seed (offsets 0, 1, 2) so the suite is reproducible as a whole.
std::vector<ExperimentReport> verify_prop_6_2(const VerifySpec &spec);

/**
 * Sigma-conjugates of t^mu for regular dominant mu have an explicit witness
 * chain: sampling h in K and splitting off its diagonal part m, the identity
 * h^{-1} t^mu sigma(h) = c^{-1} (m')^{-1} t^mu sigma(m') sigma(c) holds for
 * c = m^{-1} h and any m' solving the torus Lang equation (m')^{-1}
 * sigma(m') = m^{-1} sigma(m).  Each success re-verifies the chain by direct
 * multiplication; a mismatch is a hard failure, a Lang search that runs out
 * of degrees is UNRESOLVED.  mu must be strictly decreasing.  When
 * chains_out is given the verified chains are appended to it.
 */
ExperimentReport verify_hn_reduction(const VerifySpec &spec,
                                     std::vector<HnChain> *chains_out = nullptr);

/// Reports as a JSON array (alphabetical keys, no timestamps: identical
/// runs give identical bytes).
std::string report_json(const std::vector<ExperimentReport> &reports);
/// One human-readable line per report.
std::string report_summary(const std::vector<ExperimentReport> &reports);

} // namespace strat
