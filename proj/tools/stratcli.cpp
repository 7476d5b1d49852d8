#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "strat/bgmu.hpp"
#include "strat/eozip.hpp"
#include "strat/rootdata.hpp"
#include "strat/verify.hpp"
#include "strat/weyl.hpp"

using nlohmann::json;
using namespace strat;

namespace {

/// Option error detected after CLI11 parsing (e.g. a format the command
/// cannot emit); exits with the usage code, not the computation code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string spec_path;
  std::string out_path; // empty = stdout
  std::string format = "json";
  uint64_t seed = 20260822;
  int q = 2;
  int N = 0; // 0 = auto: |mu| + 1
  long long samples = 100;
  std::vector<int> m_schedule = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  bool exhaustive = false;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig &cfg, const std::string &text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
  out << text;
}

const char *family_str(Family f) {
  switch (f) {
  case Family::GL: return "GL";
  case Family::SL: return "SL";
  case Family::Sp: return "Sp";
  case Family::GSp: return "GSp";
  }
  return "?";
}

std::string ivec_str(const IntVec &v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

/// Rationals as exact strings ("1/2"), never floats.
json rat_json(const RatVec &v) {
  json arr = json::array();
  for (const Rat &r : v) arr.push_back(r.str());
  return arr;
}

json leq_json(const std::vector<std::vector<bool>> &leq) {
  json rows = json::array();
  for (const auto &row : leq) {
    json r = json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    rows.push_back(std::move(r));
  }
  return rows;
}

json edges_json(const std::vector<std::pair<int, int>> &edges) {
  json arr = json::array();
  for (auto [a, b] : edges) arr.push_back(json::array({a, b}));
  return arr;
}

/// Hasse diagram in DOT, drawn upward: an edge a -> b means b covers a.
std::string poset_dot(const std::string &name, const std::vector<std::string> &labels,
                      const std::vector<std::pair<int, int>> &edges) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (size_t i = 0; i < labels.size(); ++i)
    os << "  n" << i << " [label=\"" << labels[i] << "\"];\n";
  for (auto [a, b] : edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

Cochar require_mu(const SpecFile &spec) {
  if (!spec.mu) throw std::runtime_error("spec file provides no mu, required by this command");
  return *spec.mu;
}

void reject_dot(const RunConfig &cfg, const std::string &cmd) {
  if (cfg.format == "dot")
    throw UsageError("format dot is not available for " + cmd +
                     " (only bgmu and eoposet emit posets)");
}

// --------------------------------------------------------------------------

int cmd_describe(const RunConfig &cfg, const SpecFile &spec) {
  reject_dot(cfg, "describe");
  RootDatum datum = build_root_datum(spec.group);
  WeylGroup W(datum);
  Pi1Data pi1 = Pi1Data::for_group(datum);
  if (cfg.format == "json") {
    json out;
    out["family"] = family_str(datum.family);
    out["rank"] = datum.rank;
    out["dim"] = datum.dim;
    out["ss_rank"] = datum.ss_rank;
    out["sigma_order"] = datum.sigma_order;
    json simple = json::array(), positive = json::array();
    for (int i = 0; i < datum.ss_rank; ++i) simple.push_back(datum.simple_root(i));
    for (int k = 0; k < datum.n_pos(); ++k) positive.push_back(datum.pos_root(k));
    out["simple_roots"] = std::move(simple);
    out["positive_roots"] = std::move(positive);
    out["weyl_size"] = W.size();
    out["pi1"] = pi1.group_str();
    if (spec.mu) {
      out["mu"] = *spec.mu;
      out["mu_bar"] = rat_json(mu_bar(datum, *spec.mu));
    }
    emit(cfg, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << family_str(datum.family) << "_" << datum.rank << ", sigma order "
       << datum.sigma_order << "\n";
    os << "ambient dim " << datum.dim << ", " << datum.ss_rank << " simple roots, "
       << datum.n_pos() << " positive roots\n";
    os << "|W| = " << W.size() << ", pi1 = " << pi1.group_str() << "\n";
    if (spec.mu) os << "mu = " << ivec_str(*spec.mu) << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_bgmu(const RunConfig &cfg, const SpecFile &spec) {
  RootDatum datum = build_root_datum(spec.group);
  WeylGroup W(datum);
  Cochar mu = require_mu(spec);
  BGmuPoset poset = enumerate_bgmu(W, mu);
  auto edges = hasse_edges(poset.leq);
  std::vector<std::string> labels;
  for (const NewtonClass &c : poset.elements)
    labels.push_back("nu=" + ratvec_str(c.nu) + " kappa=" + ivec_str(c.kappa.value));
  if (cfg.format == "json") {
    json out;
    json elems = json::array();
    for (const NewtonClass &c : poset.elements)
      elems.push_back({{"nu", rat_json(c.nu)}, {"kappa", c.kappa.value}});
    out["mu"] = mu;
    out["elements"] = std::move(elems);
    out["leq"] = leq_json(poset.leq);
    out["edges"] = edges_json(edges);
    out["max_index"] = poset.max_index;
    out["basic_index"] = poset.basic_index;
    emit(cfg, out.dump(2) + "\n");
  } else if (cfg.format == "dot") {
    emit(cfg, poset_dot("bgmu", labels, edges));
  } else {
    std::ostringstream os;
    os << "B(G,mu) for mu = " << ivec_str(mu) << ": " << poset.elements.size()
       << " classes\n";
    for (size_t i = 0; i < labels.size(); ++i) {
      os << "  " << i << ": " << labels[i];
      if ((int)i == poset.max_index) os << "  [max]";
      if ((int)i == poset.basic_index) os << "  [basic]";
      os << "\n";
    }
    os << "covers:";
    for (auto [a, b] : edges) os << " " << a << "<" << b;
    os << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_eoposet(const RunConfig &cfg, const SpecFile &spec) {
  RootDatum datum = build_root_datum(spec.group);
  WeylGroup W(datum);
  Cochar mu = require_mu(spec);
  EOStratification s = eo_labels(W, mu);
  auto edges = hasse_edges(s.poset.leq);
  std::vector<std::string> labels;
  for (const EOLabel &l : s.labels)
    labels.push_back(word_str(W.element(l.w).word) + " (" + std::to_string(l.length) + ")");
  if (cfg.format == "json") {
    json out;
    json elems = json::array();
    for (const EOLabel &l : s.labels)
      elems.push_back({{"w", word_str(W.element(l.w).word)}, {"length", l.length}});
    out["mu"] = mu;
    json jj = json::array();
    for (int i : s.J) jj.push_back(i);
    out["J"] = std::move(jj);
    out["elements"] = std::move(elems);
    out["leq"] = leq_json(s.poset.leq);
    out["edges"] = edges_json(edges);
    out["max_pos"] = s.poset.max_pos;
    out["min_pos"] = s.poset.min_pos;
    emit(cfg, out.dump(2) + "\n");
  } else if (cfg.format == "dot") {
    emit(cfg, poset_dot("eoposet", labels, edges));
  } else {
    std::ostringstream os;
    os << "^JW for mu = " << ivec_str(mu) << ", J = {";
    for (size_t i = 0; i < s.J.size(); ++i) os << (i ? "," : "") << s.J[i];
    os << "}: " << s.labels.size() << " strata\n";
    for (size_t i = 0; i < labels.size(); ++i) {
      os << "  " << i << ": " << labels[i];
      if ((int)i == s.poset.max_pos) os << "  [max]";
      if ((int)i == s.poset.min_pos) os << "  [min]";
      os << "\n";
    }
    os << "covers:";
    for (auto [a, b] : edges) os << " " << a << "<" << b;
    os << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_eo2newton(const RunConfig &cfg, const SpecFile &spec) {
  reject_dot(cfg, "eo2newton");
  RootDatum datum = build_root_datum(spec.group);
  WeylGroup W(datum);
  Cochar mu = require_mu(spec);
  EOStratification s = eo_labels(W, mu);
  std::vector<NewtonClass> table = eo_newton_table(W, mu);
  NewtonClass top = b_max(W, mu);
  if (cfg.format == "json") {
    json out;
    out["mu"] = mu;
    out["mu_bar"] = rat_json(mu_bar(datum, mu));
    json rows = json::array();
    for (size_t i = 0; i < table.size(); ++i) {
      bool is_top = table[i].nu == top.nu && table[i].kappa == top.kappa;
      rows.push_back({{"w", word_str(W.element(s.labels[i].w).word)},
                      {"length", s.labels[i].length},
                      {"nu", rat_json(table[i].nu)},
                      {"kappa", table[i].kappa.value},
                      {"is_b_max", is_top}});
    }
    out["table"] = std::move(rows);
    emit(cfg, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "EO -> Newton for mu = " << ivec_str(mu) << "\n";
    for (size_t i = 0; i < table.size(); ++i) {
      os << "  " << word_str(W.element(s.labels[i].w).word) << " -> nu="
         << ratvec_str(table[i].nu) << " kappa=" << ivec_str(table[i].kappa.value);
      if (table[i].nu == top.nu && table[i].kappa == top.kappa) os << "  [b_max]";
      os << "\n";
    }
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_hncheck(const RunConfig &cfg, const SpecFile &spec) {
  reject_dot(cfg, "hncheck");
  RootDatum datum = build_root_datum(spec.group);
  WeylGroup W(datum);
  Cochar mu = require_mu(spec);
  RatCochar mb = mu_bar(datum, mu);
  LeviDatum M = levi_centralizer(W, mb);
  AffineElement b0{mu, W.identity()};
  HNReport rep = hn_applicable(M, mu, b0);
  if (cfg.format == "json") {
    json out;
    out["mu"] = mu;
    out["mu_bar"] = rat_json(mb);
    json msimple = json::array();
    for (int k : M.simple_roots) msimple.push_back(datum.pos_root(k));
    out["levi_simple_roots"] = std::move(msimple);
    out["applicable"] = rep.applicable;
    out["kappa_matches"] = rep.kappa_matches;
    out["slope_in_vm_plus"] = rep.slope_in_vm_plus;
    out["newton_g_dominant"] = rep.newton_g_dominant;
    out["kappa_m_b0"] = rep.kappa_m_b0.value;
    out["kappa_m_lambda"] = rep.kappa_m_lambda.value;
    out["vm_image"] = rat_json(rep.vm_image);
    out["m_newton"] = rat_json(rep.m_newton);
    emit(cfg, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "Hodge-Newton hypotheses for lambda = " << ivec_str(mu)
       << ", M = Cent(mu_bar), b0 = t^lambda\n";
    os << "  mu_bar = " << ratvec_str(mb) << ", Levi simple roots: " << M.simple_roots.size()
       << "\n";
    os << "  (a) kappa match: " << (rep.kappa_matches ? "yes" : "no") << "\n";
    os << "  (b) slope image in V_M^+: " << (rep.slope_in_vm_plus ? "yes" : "no") << "\n";
    os << "  (c) M-Newton point G-dominant: " << (rep.newton_g_dominant ? "yes" : "no")
       << "\n";
    os << "  applicable: " << (rep.applicable ? "yes" : "no") << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_verify_loop(const RunConfig &cfg, const SpecFile &spec) {
  reject_dot(cfg, "verify-loop");
  Cochar mu = require_mu(spec);
  if (spec.group.family != Family::GL)
    throw std::runtime_error("verify-loop runs on GL spec files (matrix model)");
  VerifySpec vs;
  vs.q = cfg.q;
  vs.m = 1;
  long long size = 0;
  for (long long v : mu) size += v;
  vs.N = cfg.N > 0 ? cfg.N : (int)size + 1;
  vs.mu = mu;
  vs.samples = cfg.samples;
  vs.seed = cfg.seed;
  vs.m_schedule = cfg.m_schedule;
  vs.exhaustive = cfg.exhaustive;

  std::vector<ExperimentReport> reports = verify_prop_6_2(vs);
  bool regular = true;
  for (size_t i = 1; i < mu.size(); ++i)
    if (mu[i] >= mu[i - 1]) regular = false;
  if (regular) reports.push_back(verify_hn_reduction(vs));

  if (cfg.format == "json") {
    emit(cfg, report_json(reports) + "\n");
    std::cerr << report_summary(reports);
  } else {
    emit(cfg, report_summary(reports));
  }
  long long hard = 0;
  for (const ExperimentReport &r : reports) hard += r.hard_failures;
  return hard > 0 ? 3 : 0;
}

} // namespace

int main(int argc, char **argv) {
  RunConfig cfg;
  CLI::App app{"Group-theoretic stratification toolkit: Newton and "
               "Ekedahl-Oort posets, fiber maps, and truncated loop-group "
               "verification experiments"};
  app.require_subcommand(1);

  std::vector<std::pair<std::string, CLI::App *>> subs;
  auto add_common = [&](const std::string &name, const std::string &desc) {
    CLI::App *c = app.add_subcommand(name, desc);
    c->add_option("--spec", cfg.spec_path, "group spec file")->required();
    c->add_option("--out", cfg.out_path, "output path (default stdout)");
    c->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    c->add_option("--seed", cfg.seed, "RNG seed for sampling commands");
    subs.emplace_back(name, c);
    return c;
  };

  add_common("describe", "root datum, Weyl group and pi1 summary");
  add_common("bgmu", "the poset B(G,mu) of sigma-conjugacy class invariants");
  add_common("eoposet", "the refined order on minimal coset representatives ^JW");
  add_common("eo2newton", "Newton invariants of the canonical EO stratum representatives");
  add_common("hncheck", "Hodge-Newton hypotheses for (mu, Cent(mu_bar), t^mu)");
  CLI::App *vl = add_common("verify-loop", "truncated sigma-conjugacy experiments");
  vl->add_option("--q", cfg.q, "base field size (power of 2 or 3)");
  vl->add_option("--N", cfg.N, "truncation exponent (default |mu|+1)");
  vl->add_option("--samples", cfg.samples, "samples per experiment");
  vl->add_option("--m-schedule", cfg.m_schedule, "extension degrees to search")
      ->delimiter(',');
  vl->add_flag("--exhaustive", cfg.exhaustive, "enumerate the full double coset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    SpecFile spec = parse_spec_file(read_file(cfg.spec_path));
    for (auto &[name, sub] : subs) {
      if (!sub->parsed()) continue;
      if (name == "describe") return cmd_describe(cfg, spec);
      if (name == "bgmu") return cmd_bgmu(cfg, spec);
      if (name == "eoposet") return cmd_eoposet(cfg, spec);
      if (name == "eo2newton") return cmd_eo2newton(cfg, spec);
      if (name == "hncheck") return cmd_hncheck(cfg, spec);
      if (name == "verify-loop") return cmd_verify_loop(cfg, spec);
    }
    return 1; // unreachable: require_subcommand(1)
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
