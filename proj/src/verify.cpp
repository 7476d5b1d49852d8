#include "strat/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "strat/affine.hpp"
#include "strat/rootdata.hpp"

namespace strat {

namespace {

/// Witnesses beyond this many per report are counted but not stored, except
/// in runs whose whole point is the explicit witness list.
constexpr int kWitnessCap = 25;

void validate(const VerifySpec &spec, bool regular_required) {
  if (spec.mu.empty()) throw std::invalid_argument("verify: mu must be nonempty");
  long long size = 0;
  for (size_t i = 0; i < spec.mu.size(); ++i) {
    if (spec.mu[i] < 0) throw std::invalid_argument("verify: mu entries must be >= 0");
    if (i && spec.mu[i] > spec.mu[i - 1])
      throw std::invalid_argument("verify: mu must be dominant");
    if (regular_required && i && spec.mu[i] == spec.mu[i - 1])
      throw std::invalid_argument("verify: mu must be regular (strictly decreasing)");
    size += spec.mu[i];
  }
  if (size >= spec.N)
    throw std::invalid_argument("verify: need |mu| < N for the precision budget");
  if (spec.samples < 1 && !spec.exhaustive)
    throw std::invalid_argument("verify: need at least one sample");
}

std::string ivec_str(const IntVec &v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

void add_witness(ExperimentReport &rep, std::string kind,
                 std::vector<std::pair<std::string, std::string>> fields,
                 int cap = kWitnessCap) {
  if ((int)rep.witnesses.size() >= cap) return;
  rep.witnesses.push_back({std::move(kind), std::move(fields)});
}

/// All of K1 = 1 + t M_n(O): every assignment of the t^1..t^{N-1}
/// coefficients.  Guarded — exhaustive mode is for tiny truncations.
std::vector<LoopMat> enumerate_K1(const TruncRing &r, int n, long long guard) {
  long long slots = (long long)n * n * (r.N() - 1);
  long long total = 1;
  for (long long s = 0; s < slots; ++s) {
    total *= r.field().size();
    if (total > guard)
      throw std::invalid_argument("verify: exhaustive K1 enumeration too large");
  }
  std::vector<LoopMat> out;
  out.reserve(total);
  std::vector<uint32_t> digits(slots, 0);
  for (long long code = 0; code < total; ++code) {
    LoopMat g = mat_identity(r, n);
    long long s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 1; k < r.N(); ++k) g.at(i, j)[k] = digits[s++];
    out.push_back(std::move(g));
    for (long long c = 0; c < slots; ++c) {
      if (++digits[c] < r.field().size()) break;
      digits[c] = 0;
    }
  }
  return out;
}

/// All of I: upper-triangular invertible residue, free higher coefficients.
std::vector<LoopMat> enumerate_I(const TruncRing &r, int n, long long guard) {
  long long Q = r.field().size();
  long long slots_free = (long long)n * n * (r.N() - 1) + (long long)n * (n - 1) / 2;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= Q - 1; // unit diagonal residues
  for (long long s = 0; s < slots_free; ++s) {
    total *= Q;
    if (total > guard) throw std::invalid_argument("verify: exhaustive I enumeration too large");
  }
  // Odometer over mixed radices: diagonal residues count in Q-1, the rest in Q.
  std::vector<long long> radix;
  for (int i = 0; i < n; ++i) radix.push_back(Q - 1);
  for (long long s = 0; s < slots_free; ++s) radix.push_back(Q);
  std::vector<uint32_t> digits(radix.size(), 0);
  std::vector<LoopMat> out;
  out.reserve(total);
  for (long long code = 0; code < total; ++code) {
    LoopMat g = mat_zero(r, n);
    size_t s = 0;
    for (int i = 0; i < n; ++i) g.at(i, i)[0] = 1 + digits[s++];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.at(i, j)[0] = digits[s++];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 1; k < r.N(); ++k) g.at(i, j)[k] = digits[s++];
    out.push_back(std::move(g));
    for (size_t c = 0; c < digits.size(); ++c) {
      if (++digits[c] < radix[c]) break;
      digits[c] = 0;
    }
  }
  return out;
}

/// Shared engine of experiments A and B: factor sampler or enumerator
/// around t^mu, then the kernel search for a conjugator back to t^mu.
ExperimentReport run_coset_experiment(const VerifySpec &spec, bool iwahori,
                                      const std::string &label, uint64_t seed_offset) {
  validate(spec, false);
  ExperimentReport rep;
  rep.experiment = label;
  rep.spec = spec;
  int n = (int)spec.mu.size();
  TruncRing r(spec.q, spec.m, spec.N);
  LoopMat tau = t_diag(r, spec.mu);

  ConjugatorOptions co;
  co.in_iwahori = iwahori;
  co.m_schedule = spec.m_schedule;
  co.exhaustive_cap = spec.exhaustive_cap;
  co.random_tries = spec.random_tries;

  std::vector<LoopMat> cosets;
  if (spec.exhaustive) {
    std::vector<LoopMat> factors =
        iwahori ? enumerate_I(r, n, 1 << 12) : enumerate_K1(r, n, 1 << 12);
    std::set<std::string> seen;
    for (const LoopMat &a : factors)
      for (const LoopMat &b : factors) {
        LoopMat g = mat_mul(r, a, mat_mul(r, tau, b));
        if (seen.insert(mat_str(g)).second) cosets.push_back(std::move(g));
      }
  } else {
    LoopRng rng(spec.seed + seed_offset);
    for (long long i = 0; i < spec.samples; ++i) {
      LoopMat a = iwahori ? random_I(r, n, rng) : random_K1(r, n, rng);
      LoopMat b = iwahori ? random_I(r, n, rng) : random_K1(r, n, rng);
      cosets.push_back(mat_mul(r, a, mat_mul(r, tau, b)));
    }
  }

  rep.samples = (long long)cosets.size();
  for (size_t idx = 0; idx < cosets.size(); ++idx) {
    co.seed = spec.seed + seed_offset + 7919 * (uint64_t)idx;
    ConjugatorResult res = find_sigma_conjugator(r, cosets[idx], spec.mu, co);
    if (res.status == ConjugatorStatus::found) {
      ++rep.found;
      add_witness(rep, "found",
                  {{"g", mat_str(cosets[idx])},
                   {"h", mat_str(res.h)},
                   {"m_used", std::to_string(res.m_used)}});
    } else if (spec.exhaustive) {
      // The full coset and the full kernel were enumerated: this sample
      // genuinely has no conjugator in the schedule, which the statement
      // under test rules out.
      ++rep.hard_failures;
      add_witness(rep, "hard_failure",
                  {{"g", mat_str(cosets[idx])},
                   {"status", res.status == ConjugatorStatus::exhausted
                                  ? "exhausted"
                                  : "unresolved"}},
                  (int)cosets.size());
    } else {
      ++rep.unresolved;
      add_witness(rep, "unresolved", {{"g", mat_str(cosets[idx])}});
    }
  }
  return rep;
}

} // namespace

ExperimentReport run_experiment_A(const VerifySpec &spec) {
  return run_coset_experiment(spec, false, "A", 0);
}

ExperimentReport run_experiment_B(const VerifySpec &spec) {
  return run_coset_experiment(spec, true, "B", 1);
}

ExperimentReport run_experiment_C(const VerifySpec &spec) {
  validate(spec, false);
  ExperimentReport rep;
  rep.experiment = "C";
  rep.spec = spec;
  int n = (int)spec.mu.size();
  TruncRing r(spec.q, spec.m, spec.N);
  LoopMat tau = t_diag(r, spec.mu);
  long long size = 0;
  for (long long v : spec.mu) size += v;
  int steps = size > 0 ? (int)((spec.N - 1) / size) : 1;

  // The expected Newton point comes from the root-datum side, not from the
  // matrix arithmetic under test.
  RootDatum datum = build_root_datum({Family::GL, n, SigmaKind::identity});
  RatVec expect_nu = mu_bar(datum, spec.mu);

  LoopRng rng(spec.seed + 2);
  rep.samples = spec.samples;
  for (long long i = 0; i < spec.samples; ++i) {
    LoopMat k = random_K(r, n, rng);
    LoopMat g = sigma_conjugate(r, k, tau);
    auto cart = cartan_invariant(r, g);
    auto nu = newton_invariant(r, g, steps);
    bool ok = cart.has_value() && *cart == spec.mu && nu.has_value() && *nu == expect_nu;
    if (ok) {
      ++rep.found;
    } else {
      ++rep.hard_failures;
      add_witness(rep, "hard_failure",
                  {{"g", mat_str(g)},
                   {"k", mat_str(k)},
                   {"cartan", cart ? ivec_str(*cart) : "insufficient precision"},
                   {"newton", nu ? ratvec_str(*nu) : "insufficient precision"},
                   {"expected_cartan", ivec_str(spec.mu)},
                   {"expected_newton", ratvec_str(expect_nu)}});
    }
  }
  return rep;
}

std::vector<ExperimentReport> verify_prop_6_2(const VerifySpec &spec) {
  return {run_experiment_A(spec), run_experiment_B(spec), run_experiment_C(spec)};
}

std::optional<HnChain> hn_reduce(const TruncRing &r, const IntVec &mu,
                                 const LoopMat &h, int m_cap) {
  auto hinv = mat_inverse(r, h);
  if (!hinv) throw std::invalid_argument("hn_reduce: h must be invertible");
  LoopMat tau = t_diag(r, mu);
  LoopMat g0 = mat_mul(r, *hinv, mat_mul(r, tau, mat_sigma(r, h)));

  // Split off the diagonal part: m carries the unit diagonal entries of h,
  // c = m^{-1} h the rest.  Any unit diagonal works for the chain identity;
  // non-unit diagonal entries simply stay inside c.
  LoopMat m = mat_identity(r, h.n);
  for (int i = 0; i < h.n; ++i)
    if (r.is_unit(h.at(i, i))) m.at(i, i) = h.at(i, i);
  LoopMat minv = mat_identity(r, h.n);
  for (int i = 0; i < h.n; ++i) minv.at(i, i) = r.inv(m.at(i, i));
  LoopMat c = mat_mul(r, minv, h);
  LoopMat d = mat_mul(r, minv, mat_sigma(r, m));

  auto lang = solve_torus_lang(r, d, m_cap);
  if (!lang) return std::nullopt;
  RingEmbedding emb(r, lang->ring);
  return HnChain{lang->ring, emb.apply(g0), emb.apply(c), lang->h};
}

ExperimentReport verify_hn_reduction(const VerifySpec &spec,
                                     std::vector<HnChain> *chains_out) {
  validate(spec, true);
  ExperimentReport rep;
  rep.experiment = "hn";
  rep.spec = spec;
  int n = (int)spec.mu.size();
  TruncRing r(spec.q, spec.m, spec.N);

  LoopRng rng(spec.seed + 3);
  rep.samples = spec.samples;
  for (long long i = 0; i < spec.samples; ++i) {
    LoopMat h = random_K(r, n, rng);
    auto chain = hn_reduce(r, spec.mu, h, spec.lang_m_cap);
    if (!chain) {
      ++rep.unresolved;
      add_witness(rep, "unresolved", {{"h", mat_str(h)}}, (int)spec.samples);
      continue;
    }
    // Re-verify by direct multiplication in the extension ring:
    // g = c^{-1} (m')^{-1} t^mu sigma(m') sigma(c).
    const TruncRing &E = chain->ring;
    auto cinv = mat_inverse(E, chain->c);
    auto mpinv = mat_inverse(E, chain->m_prime);
    bool ok = cinv.has_value() && mpinv.has_value();
    if (ok) {
      LoopMat rhs = mat_mul(E, *cinv,
                            mat_mul(E, *mpinv,
                                    mat_mul(E, t_diag(E, spec.mu),
                                            mat_mul(E, mat_sigma(E, chain->m_prime),
                                                    mat_sigma(E, chain->c)))));
      ok = rhs == chain->g;
    }
    if (!ok) {
      ++rep.hard_failures;
      add_witness(rep, "hard_failure",
                  {{"h", mat_str(h)},
                   {"c", mat_str(chain->c)},
                   {"m_prime", mat_str(chain->m_prime)},
                   {"g", mat_str(chain->g)}},
                  (int)spec.samples);
      continue;
    }
    ++rep.found;
    add_witness(rep, "chain",
                {{"h", mat_str(h)},
                 {"c", mat_str(chain->c)},
                 {"m_prime", mat_str(chain->m_prime)},
                 {"g", mat_str(chain->g)},
                 {"m_used", std::to_string(chain->ring.m())}},
                (int)spec.samples);
    if (chains_out) chains_out->push_back(std::move(*chain));
  }
  return rep;
}

std::string report_json(const std::vector<ExperimentReport> &reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ExperimentReport &rep : reports) {
    nlohmann::json params;
    params["N"] = rep.spec.N;
    params["exhaustive"] = rep.spec.exhaustive;
    params["lang_m_cap"] = rep.spec.lang_m_cap;
    params["m"] = rep.spec.m;
    params["m_schedule"] = rep.spec.m_schedule;
    params["mu"] = rep.spec.mu;
    params["q"] = rep.spec.q;
    params["random_tries"] = rep.spec.random_tries;
    params["samples_requested"] = rep.spec.samples;
    nlohmann::json wits = nlohmann::json::array();
    for (const Witness &w : rep.witnesses) {
      nlohmann::json jw;
      jw["kind"] = w.kind;
      for (const auto &[key, value] : w.fields) jw[key] = value;
      wits.push_back(std::move(jw));
    }
    nlohmann::json jr;
    jr["experiment"] = rep.experiment;
    jr["params"] = std::move(params);
    jr["seed"] = rep.spec.seed;
    jr["samples"] = rep.samples;
    jr["found"] = rep.found;
    jr["unresolved"] = rep.unresolved;
    jr["hard_failures"] = rep.hard_failures;
    jr["witnesses"] = std::move(wits);
    arr.push_back(std::move(jr));
  }
  return arr.dump(2);
}

std::string report_summary(const std::vector<ExperimentReport> &reports) {
  std::ostringstream os;
  for (const ExperimentReport &rep : reports) {
    os << "experiment " << rep.experiment << ": samples=" << rep.samples
       << " found=" << rep.found << " unresolved=" << rep.unresolved
       << " hard_failures=" << rep.hard_failures
       << (rep.hard_failures ? "  << HARD FAILURE" : "") << "\n";
  }
  return os.str();
}

} // namespace strat
