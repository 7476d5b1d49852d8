#include "strat/affine.hpp"

#include <stdexcept>

namespace strat {

Pi1Data::Pi1Data(const RootDatum &datum, const std::vector<IntVec> &coroot_generators)
    : datum_(&datum) {
  int r = datum.cochar_rank;
  // Relation columns in cocharacter-basis coordinates: the given coroots,
  // then (sigma - 1) of each basis vector.
  std::vector<IntVec> rel_cols;
  for (const auto &cv : coroot_generators) rel_cols.push_back(cochar_in_basis(datum, cv));
  for (int i = 0; i < r; ++i) {
    Cochar diff = vec_sub(sigma_apply(datum, datum.cochar_basis[i]), datum.cochar_basis[i]);
    rel_cols.push_back(cochar_in_basis(datum, diff));
  }

  IntMat a(r, IntVec(rel_cols.size(), 0));
  for (size_t j = 0; j < rel_cols.size(); ++j)
    for (int i = 0; i < r; ++i) a[i][j] = rel_cols[j][i];

  SmithForm s = smith_normal_form(a);
  reduce_ = s.u;
  divisors_.assign(r, 0);
  for (size_t i = 0; i < s.divisors.size() && i < (size_t)r; ++i)
    divisors_[i] = s.divisors[i];
  for (int i = 0; i < r; ++i) {
    if (divisors_[i] != 0) continue;
    free_rows_.push_back(i);
    // Normalize the sign of free rows (first nonzero entry positive) so the
    // free coordinates are canonical up to the SNF row choice; for GL_n this
    // makes the free coordinate the plain coordinate sum.
    for (int j = 0; j < r; ++j) {
      if (reduce_[i][j] == 0) continue;
      if (reduce_[i][j] < 0)
        for (auto &x : reduce_[i]) x = -x;
      break;
    }
  }
}

Pi1Data Pi1Data::for_group(const RootDatum &datum) {
  std::vector<IntVec> coroots;
  for (int i = 0; i < datum.ss_rank; ++i) coroots.push_back(datum.simple_coroot(i));
  return Pi1Data(datum, coroots);
}

std::vector<long long> Pi1Data::invariant_factors() const {
  std::vector<long long> out;
  for (long long d : divisors_)
    if (d > 1) out.push_back(d);
  return out;
}

std::string Pi1Data::group_str() const {
  std::string out;
  for (int i = 0; i < free_rank(); ++i) out += out.empty() ? "Z" : " + Z";
  for (long long d : invariant_factors())
    out += (out.empty() ? "Z/" : " + Z/") + std::to_string(d);
  return out.empty() ? "0" : out;
}

KottwitzPoint Pi1Data::canonical_form(const Cochar &lambda) const {
  IntVec coords = cochar_in_basis(*datum_, lambda);
  IntVec raw = mat_apply(reduce_, coords);
  KottwitzPoint p;
  p.value.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    long long d = divisors_[i];
    p.value[i] = d == 0 ? raw[i] : ((raw[i] % d) + d) % d;
  }
  return p;
}

RatVec Pi1Data::free_part(const RatCochar &v) const {
  // Rational coordinates of v in the cocharacter basis.
  int dim = datum_->dim, r = datum_->cochar_rank;
  RatMat a(dim, RatVec(r, Rat(0)));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < dim; ++i) a[i][j] = Rat(datum_->cochar_basis[j][i]);
  auto coords = rat_solve(a, v);
  if (!coords) throw std::invalid_argument("free_part: vector outside X_*(T) tensor Q");
  RatVec out;
  for (int i : free_rows_) {
    Rat acc(0);
    for (int j = 0; j < r; ++j) acc += Rat(reduce_[i][j]) * (*coords)[j];
    out.push_back(acc);
  }
  return out;
}

KottwitzPoint kottwitz_point(const Pi1Data &pi1, const AffineElement &a) {
  return pi1.canonical_form(a.translation);
}

KottwitzPoint mu_natural(const Pi1Data &pi1, const Cochar &mu) {
  return pi1.canonical_form(mu);
}

RatCochar newton_point(const WeylGroup &w, const AffineElement &a) {
  const RootDatum &d = w.datum();
  if ((int)a.translation.size() != d.dim)
    throw std::invalid_argument("newton_point: translation dimension mismatch");
  IntMat A = mat_mul(w.element(a.finite_part).action, d.sigma_cochar);

  // Smallest n with A^n = 1 and ord(sigma) | n.
  IntMat id = identity_mat(d.dim);
  IntMat p = id;
  int n = 0;
  constexpr int kOrderGuard = 10000;
  do {
    p = mat_mul(p, A);
    ++n;
    if (n > kOrderGuard)
      throw std::logic_error("newton_point: order guard exceeded");
  } while (!(p == id && n % d.sigma_order == 0));

  RatCochar acc(d.dim, Rat(0));
  Cochar cur = a.translation;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d.dim; ++c) acc[c] += Rat(cur[c], n);
    cur = mat_apply(A, cur);
  }
  RatCochar nu = dominant_representative(d, acc).vplus;
  if (!is_dominant(d, nu)) throw std::logic_error("newton_point: result not dominant");
  if (!ratvec_eq(sigma_apply(d, nu), nu))
    throw std::logic_error("newton_point: result not sigma-invariant");
  return nu;
}

RatCochar mu_bar(const RootDatum &datum, const Cochar &mu) {
  if (!is_dominant(datum, mu))
    throw std::invalid_argument("mu_bar: mu must be dominant");
  int r = datum.sigma_order;
  RatCochar acc(datum.dim, Rat(0));
  Cochar cur = mu;
  for (int i = 0; i < r; ++i) {
    for (int c = 0; c < datum.dim; ++c) acc[c] += Rat(cur[c], r);
    cur = sigma_apply(datum, cur);
  }
  if (!is_dominant(datum, acc)) throw std::logic_error("mu_bar: average not dominant");
  if (!ratvec_eq(sigma_apply(datum, acc), acc))
    throw std::logic_error("mu_bar: average not sigma-invariant");
  return acc;
}

} // namespace strat
