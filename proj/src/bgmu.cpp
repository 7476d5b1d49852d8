#include "strat/bgmu.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace strat {

namespace {

// Basis of the linear functionals fixed by W and sigma: the common nullspace
// of (A_s^T - 1) over simple reflections s and (S^T - 1).
std::vector<RatVec> invariant_functionals(const RootDatum &d) {
  std::vector<IntMat> gens;
  for (int i = 0; i < d.ss_rank; ++i)
    gens.push_back(reflection_matrix(d, d.simple_root(i), d.simple_coroot(i)));
  gens.push_back(d.sigma_cochar);

  RatMat stacked;
  for (const auto &g : gens) {
    IntMat gt = mat_transpose(g);
    for (int i = 0; i < d.dim; ++i) {
      RatVec row(d.dim, Rat(0));
      for (int j = 0; j < d.dim; ++j) row[j] = Rat(gt[i][j] - (i == j ? 1 : 0));
      stacked.push_back(row);
    }
  }
  if (stacked.empty()) { // rank-0 semisimple part and trivial sigma
    std::vector<RatVec> all;
    for (int i = 0; i < d.dim; ++i) {
      RatVec e(d.dim, Rat(0));
      e[i] = Rat(1);
      all.push_back(e);
    }
    return all;
  }
  return rat_nullspace(stacked);
}

// One fundamental weight per simple index: any functional pairing to
// delta_ij with the simple coroots (underdetermined; only the pairing with
// the coroot span matters).
std::vector<RatVec> fundamental_weights(const RootDatum &d) {
  RatMat rows(d.ss_rank, RatVec(d.dim, Rat(0)));
  for (int i = 0; i < d.ss_rank; ++i)
    for (int j = 0; j < d.dim; ++j) rows[i][j] = Rat(d.simple_coroot(i)[j]);
  std::vector<RatVec> out;
  for (int j = 0; j < d.ss_rank; ++j) {
    RatVec rhs(d.ss_rank, Rat(0));
    rhs[j] = Rat(1);
    auto omega = rat_solve(rows, rhs);
    if (!omega) throw std::logic_error("fundamental_weights: coroots not independent");
    out.push_back(*omega);
  }
  return out;
}

Rat pair_rat(const RatVec &f, const RatVec &v) {
  Rat s(0);
  for (size_t i = 0; i < f.size(); ++i) s += f[i] * v[i];
  return s;
}

} // namespace

bool newton_leq(const RootDatum &datum, const RatCochar &nu_prime, const RatCochar &nu) {
  if (!is_dominant(datum, nu_prime) || !is_dominant(datum, nu))
    throw std::invalid_argument("newton_leq: arguments must be dominant");
  if (!ratvec_eq(sigma_apply(datum, nu_prime), nu_prime) ||
      !ratvec_eq(sigma_apply(datum, nu), nu))
    throw std::invalid_argument("newton_leq: arguments must be sigma-invariant");

  RatCochar delta = vec_sub(nu, nu_prime);
  for (const auto &f : invariant_functionals(datum))
    if (!pair_rat(f, delta).is_zero())
      throw std::invalid_argument("incomparable: distinct kappa-components");
  for (const auto &omega : fundamental_weights(datum))
    if (pair_rat(omega, delta).sign() < 0) return false;
  return true;
}

std::vector<RatCochar> polygon_oracle(const RootDatum &datum, const Cochar &mu) {
  if ((datum.family != Family::GL && datum.family != Family::SL) ||
      datum.sigma_order != 1)
    throw std::invalid_argument("polygon_oracle: only untwisted GL/SL");
  if (!is_dominant(datum, mu))
    throw std::invalid_argument("polygon_oracle: mu must be dominant");

  int n = datum.dim;
  std::vector<long long> prefix(n + 1, 0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + mu[k];
  long long total = prefix[n];
  long long y_min = std::min<long long>(0, total);

  // Depth-first over concave integer-vertex paths weakly below mu's path.
  std::vector<RatCochar> found;
  std::vector<Rat> slopes;
  auto recurse = [&](auto &&self, int k, long long y, bool have_prev, Rat prev) -> void {
    if (k == n) {
      if (y == total) {
        RatCochar nu;
        for (const Rat &s : slopes) nu.push_back(s); // already expanded per step
        found.push_back(nu);
      }
      return;
    }
    for (int k2 = k + 1; k2 <= n; ++k2) {
      for (long long y2 = y_min; y2 <= prefix[k2]; ++y2) {
        if (k2 == n && y2 != total) continue;
        Rat slope(y2 - y, k2 - k);
        if (have_prev && !(slope < prev)) continue;
        for (int i = 0; i < k2 - k; ++i) slopes.push_back(slope);
        self(self, k2, y2, true, slope);
        for (int i = 0; i < k2 - k; ++i) slopes.pop_back();
      }
    }
  };
  recurse(recurse, 0, 0, false, Rat(0));

  std::sort(found.begin(), found.end(), ratvec_lex_less);
  found.erase(std::unique(found.begin(), found.end(), ratvec_eq), found.end());
  return found;
}

bool polygon_leq(const RatCochar &a, const RatCochar &b) {
  if (a.size() != b.size()) throw std::invalid_argument("polygon_leq: length mismatch");
  Rat pa(0), pb(0);
  for (size_t k = 0; k < a.size(); ++k) {
    pa += a[k];
    pb += b[k];
    if (k + 1 < a.size() && pb < pa) return false;
  }
  return pa == pb;
}

BGmuPoset enumerate_bgmu(const WeylGroup &w, const Cochar &mu) {
  const RootDatum &d = w.datum();
  if (!is_dominant(d, mu))
    throw std::invalid_argument("enumerate_bgmu: mu must be dominant");
  if (!in_cochar_lattice(d, mu))
    throw std::invalid_argument("enumerate_bgmu: mu not in the cocharacter lattice");

  Pi1Data pi1 = Pi1Data::for_group(d);
  KottwitzPoint mu_nat = pi1.canonical_form(mu);
  RatCochar mubar = mu_bar(d, mu);

  // Dominant translation parts: every kappa-compatible dominant lambda with
  // lambda_bar <= mu_bar.  A box of half-width max|mu_i| + 2 contains the
  // balanced representative of every class (its entries round the Newton
  // slopes, which lie within max|mu_i|), so scanning it is complete.
  long long box = 2;
  for (long long c : mu) box = std::max(box, std::llabs(c) + 2);
  std::vector<Cochar> translations;
  Cochar probe(d.dim, -box);
  for (;;) {
    if (in_cochar_lattice(d, probe) && is_dominant(d, probe) &&
        pi1.canonical_form(probe) == mu_nat &&
        newton_leq(d, mu_bar(d, probe), mubar))
      translations.push_back(probe);
    int c = 0;
    while (c < d.dim && probe[c] == box) probe[c++] = -box;
    if (c == d.dim) break;
    ++probe[c];
  }

  std::vector<NewtonClass> classes;
  for (const Cochar &lambda : translations) {
    for (int fin = 0; fin < w.size(); ++fin) {
      NewtonClass c;
      c.nu = newton_point(w, {lambda, fin});
      c.kappa = mu_nat;
      classes.push_back(std::move(c));
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const NewtonClass &a, const NewtonClass &b) {
              return ratvec_lex_less(a.nu, b.nu);
            });
  classes.erase(std::unique(classes.begin(), classes.end(),
                            [](const NewtonClass &a, const NewtonClass &b) {
                              return ratvec_eq(a.nu, b.nu);
                            }),
                classes.end());

  BGmuPoset p;
  p.elements = std::move(classes);
  size_t n = p.elements.size();
  for (const auto &c : p.elements)
    if (!newton_leq(d, c.nu, mubar))
      throw std::logic_error("enumerate_bgmu: class above mu_bar");

  p.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      p.leq[i][j] = newton_leq(d, p.elements[i].nu, p.elements[j].nu);

  for (size_t i = 0; i < n; ++i) {
    bool is_max = true, is_min = true;
    for (size_t j = 0; j < n; ++j) {
      if (!p.leq[j][i]) is_max = false;
      if (!p.leq[i][j]) is_min = false;
    }
    if (is_max) {
      if (p.max_index != -1) throw std::logic_error("enumerate_bgmu: maximum not unique");
      p.max_index = (int)i;
    }
    bool basic = true;
    for (int s = 0; s < d.ss_rank; ++s)
      if (!pairing(d, d.simple_root(s), p.elements[i].nu).is_zero()) basic = false;
    if (basic) {
      if (p.basic_index != -1) throw std::logic_error("enumerate_bgmu: basic not unique");
      p.basic_index = (int)i;
      if (!is_min) throw std::logic_error("enumerate_bgmu: basic element not minimal");
    }
  }
  if (p.max_index == -1 || !ratvec_eq(p.elements[p.max_index].nu, mubar))
    throw std::logic_error("enumerate_bgmu: maximal element is not mu_bar");
  if (p.basic_index == -1) throw std::logic_error("enumerate_bgmu: no basic element");

  // Mandatory cross-check against the definitional oracle where it applies.
  if ((d.family == Family::GL || d.family == Family::SL) && d.sigma_order == 1) {
    auto oracle = polygon_oracle(d, mu);
    std::vector<RatCochar> mine;
    for (const auto &c : p.elements) mine.push_back(c.nu);
    // Both sorted lexicographically; compare exactly.
    bool equal = oracle.size() == mine.size();
    for (size_t i = 0; equal && i < oracle.size(); ++i)
      equal = ratvec_eq(oracle[i], mine[i]);
    if (!equal) {
      std::ostringstream msg;
      msg << "enumerate_bgmu: representative enumeration disagrees with the "
             "polygon oracle; enumeration:";
      for (const auto &v : mine) msg << " " << ratvec_str(v);
      msg << "; oracle:";
      for (const auto &v : oracle) msg << " " << ratvec_str(v);
      throw std::runtime_error(msg.str());
    }
  }
  return p;
}

NewtonClass b_max(const WeylGroup &w, const Cochar &mu) {
  BGmuPoset p = enumerate_bgmu(w, mu);
  return p.elements[p.max_index];
}

NewtonClass basic_element(const WeylGroup &w, const Cochar &mu) {
  BGmuPoset p = enumerate_bgmu(w, mu);
  return p.elements[p.basic_index];
}

LeviDatum levi_centralizer(const WeylGroup &w, const RatCochar &v) {
  const RootDatum &d = w.datum();
  if (!ratvec_eq(sigma_apply(d, v), v))
    throw std::invalid_argument("levi_centralizer: center is not sigma-invariant, "
                                "the Levi would not be sigma-stable");
  LeviDatum m;
  m.weyl = &w;
  m.center = v;
  for (int k = 0; k < d.n_pos(); ++k)
    if (pairing(d, d.pos_root(k), v).is_zero()) m.pos_roots.push_back(k);

  // sigma-stability of the root set (holds by construction; verified).
  for (int k : m.pos_roots) {
    IntVec img = sigma_apply_char(d, d.pos_root(k));
    bool inside = false;
    for (int l : m.pos_roots) {
      if (d.pos_root(l) == img) { inside = true; break; }
      IntVec neg = d.pos_root(l);
      for (auto &x : neg) x = -x;
      if (neg == img) { inside = true; break; }
    }
    if (!inside) throw std::logic_error("levi_centralizer: root set not sigma-stable");
  }

  // Indecomposables: not a sum of two members.
  for (int k : m.pos_roots) {
    bool decomposable = false;
    for (int a : m.pos_roots) {
      for (int b : m.pos_roots) {
        if (vec_add(d.pos_root(a), d.pos_root(b)) == d.pos_root(k)) {
          decomposable = true;
          break;
        }
      }
      if (decomposable) break;
    }
    if (!decomposable) m.simple_roots.push_back(k);
  }
  m.wm_elements = w.reflection_subgroup(m.pos_roots);
  return m;
}

Pi1Data levi_pi1(const LeviDatum &m) {
  const RootDatum &d = m.weyl->datum();
  std::vector<IntVec> coroots;
  for (int k : m.pos_roots) coroots.push_back(d.pos_coroot(k));
  return Pi1Data(d, coroots);
}

std::vector<CentralityWitness> mu_central_in_levi(const WeylGroup &w, const Cochar &mu) {
  const RootDatum &d = w.datum();
  if (!is_dominant(d, mu))
    throw std::invalid_argument("mu_central_in_levi: mu must be dominant");
  LeviDatum m = levi_centralizer(w, mu_bar(d, mu));
  std::vector<CentralityWitness> out;
  for (int k : m.pos_roots) {
    CentralityWitness cw;
    cw.pos_root_index = k;
    Cochar cur = mu;
    long long sum = 0;
    for (int i = 0; i < d.sigma_order; ++i) {
      long long s = pairing(d, d.pos_root(k), cur);
      if (s < 0)
        throw std::logic_error("mu_central_in_levi: negative summand "
                               "(sigma-image of mu not dominant?)");
      cw.summands.push_back(s);
      sum += s;
      cur = sigma_apply(d, cur);
    }
    if (sum != 0 || cw.summands[0] != 0)
      throw std::logic_error("mu_central_in_levi: <alpha, mu> != 0 on Phi_M "
                             "(contradicts centrality of mu(t) in M)");
    out.push_back(std::move(cw));
  }
  return out;
}

bool in_VM(const LeviDatum &m, const RatCochar &v) {
  const RootDatum &d = m.weyl->datum();
  if (!ratvec_eq(sigma_apply(d, v), v)) return false;
  for (int k : m.pos_roots)
    if (!pairing(d, d.pos_root(k), v).is_zero()) return false;
  return true;
}

RatCochar project_to_VM(const LeviDatum &m, const RatCochar &v) {
  const RootDatum &d = m.weyl->datum();
  RatCochar sig(d.dim, Rat(0));
  RatCochar cur = v;
  for (int i = 0; i < d.sigma_order; ++i) {
    for (int c = 0; c < d.dim; ++c) sig[c] += cur[c] / Rat(d.sigma_order);
    cur = sigma_apply(d, cur);
  }
  RatCochar out(d.dim, Rat(0));
  for (int e : m.wm_elements) {
    RatCochar img = m.weyl->apply(e, sig);
    for (int c = 0; c < d.dim; ++c) out[c] += img[c] / Rat((long long)m.wm_elements.size());
  }
  if (!in_VM(m, out)) throw std::logic_error("project_to_VM: image not in V_M");
  return out;
}

bool in_VM_plus(const LeviDatum &m, const RatCochar &v) {
  const RootDatum &d = m.weyl->datum();
  if (!in_VM(m, v)) throw std::invalid_argument("in_VM_plus: vector not in V_M");
  std::set<int> inside(m.pos_roots.begin(), m.pos_roots.end());
  for (int k = 0; k < d.n_pos(); ++k) {
    if (inside.count(k)) continue;
    if (pairing(d, d.pos_root(k), v).sign() <= 0) return false;
  }
  return true;
}

RatCochar m_dominant_representative(const LeviDatum &m, const RatCochar &v) {
  const RootDatum &d = m.weyl->datum();
  RatCochar cur = v;
  bool changed = true;
  size_t guard = 0;
  while (changed) {
    changed = false;
    for (int k : m.simple_roots) {
      Rat p = pairing(d, d.pos_root(k), cur);
      if (p.sign() < 0) {
        const IntVec &cv = d.pos_coroot(k);
        for (int c = 0; c < d.dim; ++c) cur[c] -= p * Rat(cv[c]);
        changed = true;
        if (++guard > 1000000)
          throw std::logic_error("m_dominant_representative: no convergence");
        break;
      }
    }
  }
  return cur;
}

RatCochar m_newton_point(const LeviDatum &m, const AffineElement &b0) {
  const RootDatum &d = m.weyl->datum();
  if (std::find(m.wm_elements.begin(), m.wm_elements.end(), b0.finite_part) ==
      m.wm_elements.end())
    throw std::invalid_argument("m_newton_point: finite part not in W_M");
  IntMat A = mat_mul(m.weyl->element(b0.finite_part).action, d.sigma_cochar);
  IntMat id = identity_mat(d.dim), p = id;
  int n = 0;
  constexpr int kOrderGuard = 10000;
  do {
    p = mat_mul(p, A);
    ++n;
    if (n > kOrderGuard) throw std::logic_error("m_newton_point: order guard exceeded");
  } while (!(p == id && n % d.sigma_order == 0));
  RatCochar acc(d.dim, Rat(0));
  Cochar cur = b0.translation;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d.dim; ++c) acc[c] += Rat(cur[c], n);
    cur = mat_apply(A, cur);
  }
  RatCochar nu = m_dominant_representative(m, acc);
  if (!ratvec_eq(sigma_apply(d, nu), nu))
    throw std::logic_error("m_newton_point: result not sigma-invariant");
  return nu;
}

HNReport hn_applicable(const LeviDatum &m, const Cochar &lambda, const AffineElement &b0) {
  const RootDatum &d = m.weyl->datum();
  if (!is_dominant(d, lambda))
    throw std::invalid_argument("hn_applicable: lambda must be G-dominant");
  if (std::find(m.wm_elements.begin(), m.wm_elements.end(), b0.finite_part) ==
      m.wm_elements.end())
    throw std::invalid_argument("hn_applicable: finite part of b0 not in W_M");

  HNReport r;
  Pi1Data pi1m = levi_pi1(m);
  r.kappa_m_b0 = pi1m.canonical_form(b0.translation);
  r.kappa_m_lambda = pi1m.canonical_form(lambda);
  r.kappa_matches = r.kappa_m_b0 == r.kappa_m_lambda;

  r.vm_image = project_to_VM(m, to_ratvec(b0.translation));
  r.slope_in_vm_plus = in_VM_plus(m, r.vm_image);

  r.m_newton = m_newton_point(m, b0);
  r.newton_g_dominant = is_dominant(d, r.m_newton);

  r.applicable = r.kappa_matches && r.slope_in_vm_plus && r.newton_g_dominant;
  return r;
}

} // namespace strat
