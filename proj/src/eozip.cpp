#include "strat/eozip.hpp"

#include <algorithm>
#include <stdexcept>

namespace strat {

namespace {

// The longest element of the full group (longest_element takes the parabolic
// type, so the full simple set, not the empty one).
int full_longest(const WeylGroup &w) {
  ParabolicType all(w.datum().ss_rank);
  for (int i = 0; i < w.datum().ss_rank; ++i) all[i] = i;
  return w.longest_element(all);
}

} // namespace

ParabolicType type_J(const RootDatum &datum, const Cochar &mu) {
  if (!is_dominant(datum, mu))
    throw std::invalid_argument("type_J: mu must be dominant");
  Cochar chi = sigma_apply_inv(datum, mu);
  ParabolicType J;
  for (int i = 0; i < datum.ss_rank; ++i)
    if (pairing(datum, datum.simple_root(i), chi) == 0) J.push_back(i);
  return J;
}

EOStratification eo_labels(const WeylGroup &w, const Cochar &mu) {
  EOStratification s;
  s.J = type_J(w.datum(), mu);
  s.poset = eo_poset(w, s.J);
  for (int elt : s.poset.elements) {
    EOLabel l;
    l.w = elt;
    l.J = s.J;
    l.length = w.element(elt).length;
    s.labels.push_back(std::move(l));
  }
  return s;
}

std::vector<int> closure_set(const EOStratification &s, int pos) {
  if (pos < 0 || pos >= (int)s.poset.elements.size())
    throw std::out_of_range("closure_set: label position out of range");
  std::vector<int> out;
  for (int i = 0; i < (int)s.poset.elements.size(); ++i)
    if (s.poset.leq[i][pos]) out.push_back(i);
  return out;
}

AffineElement eo_representative(const WeylGroup &w, const Cochar &mu, int w_elt) {
  ParabolicType J = type_J(w.datum(), mu);
  if (!w.is_min_coset_rep(w_elt, J))
    throw std::invalid_argument("eo_representative: element not in ^J W");
  int w0 = full_longest(w);
  int w0J = w.longest_element(J);
  int u = w.mult(w.mult(w_elt, w0), w.sigma_elt(w0J));
  return AffineElement{w.apply(u, mu), u};
}

namespace {

NewtonClass locate_class(const BGmuPoset &p, const RatCochar &nu,
                         const KottwitzPoint &kappa) {
  for (const auto &c : p.elements)
    if (ratvec_eq(c.nu, nu) && c.kappa == kappa) return c;
  throw std::logic_error(
      "eo_to_newton: representative class missing from B(G, mu)");
}

} // namespace

NewtonClass eo_to_newton(const WeylGroup &w, const Cochar &mu, int w_elt) {
  AffineElement rep = eo_representative(w, mu, w_elt);
  Pi1Data pi1 = Pi1Data::for_group(w.datum());
  BGmuPoset p = enumerate_bgmu(w, mu);
  return locate_class(p, newton_point(w, rep), kottwitz_point(pi1, rep));
}

std::vector<NewtonClass> eo_newton_table(const WeylGroup &w, const Cochar &mu) {
  EOStratification s = eo_labels(w, mu);
  Pi1Data pi1 = Pi1Data::for_group(w.datum());
  BGmuPoset p = enumerate_bgmu(w, mu);
  std::vector<NewtonClass> out;
  for (const EOLabel &l : s.labels) {
    AffineElement rep = eo_representative(w, mu, l.w);
    out.push_back(locate_class(p, newton_point(w, rep), kottwitz_point(pi1, rep)));
  }
  return out;
}

ZipOrbitReps zip_orbit_representatives(const WeylGroup &w, const Cochar &mu) {
  ParabolicType J = type_J(w.datum(), mu);
  int w0 = full_longest(w);
  int w0J = w.longest_element(J);
  int sig_w0J = w.sigma_elt(w0J);
  ZipOrbitReps reps;
  for (int elt : w.min_coset_reps(J)) {
    int frame = w.mult(w0J, w.mult(elt, w0));
    int twisted = w.mult(w.mult(elt, w0), sig_w0J);
    if (frame != w.mult(w0J, w.mult(twisted, w.inverse(sig_w0J))))
      throw std::logic_error(
          "zip_orbit_representatives: representative systems not W_J-twisted "
          "conjugates");
    reps.frame.push_back(frame);
    reps.twisted.push_back(twisted);
  }
  return reps;
}

std::vector<std::pair<int, int>> eo_order_anomalies(const WeylGroup &w,
                                                    const Cochar &mu) {
  EOStratification s = eo_labels(w, mu);
  std::vector<NewtonClass> table = eo_newton_table(w, mu);
  const RootDatum &d = w.datum();
  std::vector<std::pair<int, int>> out;
  int n = (int)s.labels.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !s.poset.leq[i][j]) continue;
      if (!newton_leq(d, table[i].nu, table[j].nu) &&
          !newton_leq(d, table[j].nu, table[i].nu))
        out.emplace_back(i, j);
    }
  return out;
}

} // namespace strat
