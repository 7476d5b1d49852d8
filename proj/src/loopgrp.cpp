#include "strat/loopgrp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace strat {

namespace {

// Fields are expensive to build (exp/log tables), so share them per (p, k).
std::shared_ptr<const GFField> field_cache(int p, int k) {
  static std::map<std::pair<int, int>, std::shared_ptr<const GFField>> cache;
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const GFField>(p, k);
  cache.emplace(key, f);
  return f;
}

using FieldMat = std::vector<std::vector<uint32_t>>; // residue-level matrices

FieldMat field_identity(int n) {
  FieldMat m(n, std::vector<uint32_t>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Gauss inverse over the coefficient field; nullopt when singular.
std::optional<FieldMat> field_inverse(const GFField &F, FieldMat m) {
  int n = (int)m.size();
  FieldMat inv = field_identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    uint32_t scale = F.inv(m[col][col]);
    for (int j = 0; j < n; ++j) {
      m[col][j] = F.mul(m[col][j], scale);
      inv[col][j] = F.mul(inv[col][j], scale);
    }
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      uint32_t c = m[row][col];
      for (int j = 0; j < n; ++j) {
        m[row][j] = F.sub(m[row][j], F.mul(c, m[col][j]));
        inv[row][j] = F.sub(inv[row][j], F.mul(c, inv[col][j]));
      }
    }
  }
  return inv;
}

FieldMat residue_matrix(const LoopMat &g) {
  FieldMat m(g.n, std::vector<uint32_t>(g.n, 0));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) m[i][j] = g.at(i, j)[0];
  return m;
}

/// Determinant of the submatrix of g on `rows` x `cols`, by Laplace
/// expansion along the first listed row (sizes here never exceed 5).
RingElt minor_det(const TruncRing &r, const LoopMat &g,
                  const std::vector<int> &rows, const std::vector<int> &cols) {
  if (rows.size() == 1) return g.at(rows[0], cols[0]);
  RingElt acc = r.zero();
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < cols.size(); ++j) {
    const RingElt &c = g.at(rows[0], cols[j]);
    if (r.valuation(c) == r.N()) continue;
    std::vector<int> sub_cols;
    for (size_t jj = 0; jj < cols.size(); ++jj)
      if (jj != j) sub_cols.push_back(cols[jj]);
    RingElt term = r.mul(c, minor_det(r, g, sub_rows, sub_cols));
    acc = (j % 2 == 0) ? r.add(acc, term) : r.sub(acc, term);
  }
  return acc;
}

bool next_combination(std::vector<int> &c, int n) {
  int k = (int)c.size();
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Row-reduce M over F_p in place; returns the pivot column of each row used.
std::vector<int> row_echelon_mod_p(std::vector<std::vector<uint8_t>> &m, int p) {
  std::vector<int> pivots;
  int rows = (int)m.size();
  int cols = rows ? (int)m[0].size() : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    // Normalize the pivot to 1 (p <= 3: the inverse of 2 mod 3 is 2).
    uint8_t s = m[r][c];
    if (s != 1) {
      uint8_t sinv = (uint8_t)((p == 3 && s == 2) ? 2 : 1);
      for (int j = 0; j < cols; ++j) m[r][j] = (uint8_t)(m[r][j] * sinv % p);
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      uint8_t f = m[i][c];
      for (int j = 0; j < cols; ++j)
        m[i][j] = (uint8_t)((m[i][j] + (p - f) * m[r][j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Kernel basis of M x = 0 over F_p; vectors have one entry per column.
std::vector<std::vector<uint8_t>> nullspace_mod_p(std::vector<std::vector<uint8_t>> m,
                                                  int p, int cols) {
  std::vector<int> pivots = row_echelon_mod_p(m, p);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<uint8_t>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<uint8_t> v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = (uint8_t)((p - m[r][f] % p) % p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of M x = b over F_p, or nullopt.
std::optional<std::vector<uint8_t>> solve_mod_p(std::vector<std::vector<uint8_t>> m,
                                                std::vector<uint8_t> b, int p) {
  int rows = (int)m.size();
  int cols = rows ? (int)m[0].size() : 0;
  for (int i = 0; i < rows; ++i) m[i].push_back(b[i]);
  std::vector<int> pivots = row_echelon_mod_p(m, p);
  std::vector<uint8_t> x(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt; // pivot in the rhs column
    x[pivots[r]] = m[r][cols];
  }
  for (int i = (int)pivots.size(); i < rows; ++i)
    if (m[i][cols]) return std::nullopt;
  return x;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

/// Inverse of a mod n (gcd(a, n) = 1), via extended Euclid.
long long modinv_ll(long long a, long long n) {
  long long old_r = a % n, r = n, old_s = 1, s = 0;
  while (r != 0) {
    long long qt = old_r / r;
    long long tr = old_r - qt * r, ts = old_s - qt * s;
    old_r = r;
    r = tr;
    old_s = s;
    s = ts;
  }
  return ((old_s % n) + n) % n;
}

std::vector<int> all_indices(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

} // namespace

TruncRing::TruncRing(int q, int m, int N) : q_(q), m_(m), N_(N) {
  if (m < 1) throw std::invalid_argument("TruncRing: m must be >= 1");
  if (N < 1) throw std::invalid_argument("TruncRing: N must be >= 1");
  for (int prime : {2, 3}) {
    int e = 0;
    long long v = q;
    while (v % prime == 0) {
      v /= prime;
      ++e;
    }
    if (v == 1 && e >= 1) {
      p_ = prime;
      e_ = e;
      break;
    }
  }
  if (p_ == 0) throw std::invalid_argument("TruncRing: q must be a power of 2 or 3");
  if (e_ * m > 12)
    throw std::invalid_argument("TruncRing: field degree e*m exceeds the table bound 12");
  field_ = field_cache(p_, e_ * m);
}

RingElt TruncRing::from_field(uint32_t c) const {
  RingElt a(N_, 0);
  a[0] = c;
  return a;
}

RingElt TruncRing::t_power(int k) const {
  if (k < 0) throw std::invalid_argument("TruncRing: negative power of t");
  RingElt a(N_, 0);
  if (k < N_) a[k] = 1;
  return a;
}

RingElt TruncRing::add(const RingElt &a, const RingElt &b) const {
  RingElt out(N_);
  for (int k = 0; k < N_; ++k) out[k] = field_->add(a[k], b[k]);
  return out;
}

RingElt TruncRing::sub(const RingElt &a, const RingElt &b) const {
  RingElt out(N_);
  for (int k = 0; k < N_; ++k) out[k] = field_->sub(a[k], b[k]);
  return out;
}

RingElt TruncRing::neg(const RingElt &a) const {
  RingElt out(N_);
  for (int k = 0; k < N_; ++k) out[k] = field_->neg(a[k]);
  return out;
}

RingElt TruncRing::mul(const RingElt &a, const RingElt &b) const {
  RingElt out(N_, 0);
  for (int i = 0; i < N_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j < N_; ++j)
      if (b[j] != 0) out[i + j] = field_->add(out[i + j], field_->mul(a[i], b[j]));
  }
  return out;
}

RingElt TruncRing::inv(const RingElt &a) const {
  if (!is_unit(a)) throw std::invalid_argument("TruncRing: inverse of a non-unit");
  RingElt out(N_, 0);
  out[0] = field_->inv(a[0]);
  // Back-substitution level by level: sum_{i<=k} a_i out_{k-i} = 0 for k >= 1.
  for (int k = 1; k < N_; ++k) {
    uint32_t s = 0;
    for (int i = 1; i <= k; ++i) s = field_->add(s, field_->mul(a[i], out[k - i]));
    out[k] = field_->neg(field_->mul(out[0], s));
  }
  return out;
}

RingElt TruncRing::sigma(const RingElt &a) const {
  RingElt out(N_);
  for (int k = 0; k < N_; ++k) out[k] = field_->frob_power(a[k], e_);
  return out;
}

int TruncRing::valuation(const RingElt &a) const {
  for (int k = 0; k < N_; ++k)
    if (a[k] != 0) return k;
  return N_;
}

LoopMat mat_zero(const TruncRing &r, int n) {
  LoopMat m;
  m.n = n;
  m.a.assign((size_t)n * n, r.zero());
  return m;
}

LoopMat mat_identity(const TruncRing &r, int n) {
  LoopMat m = mat_zero(r, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = r.one();
  return m;
}

LoopMat mat_mul(const TruncRing &r, const LoopMat &x, const LoopMat &y) {
  if (x.n != y.n) throw std::invalid_argument("mat_mul: size mismatch");
  LoopMat out = mat_zero(r, x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (r.valuation(x.at(i, k)) == r.N()) continue;
      for (int j = 0; j < x.n; ++j)
        out.at(i, j) = r.add(out.at(i, j), r.mul(x.at(i, k), y.at(k, j)));
    }
  return out;
}

LoopMat mat_sigma(const TruncRing &r, const LoopMat &x) {
  LoopMat out = x;
  for (auto &e : out.a) e = r.sigma(e);
  return out;
}

std::optional<LoopMat> mat_inverse(const TruncRing &r, const LoopMat &x) {
  int n = x.n, N = r.N();
  const GFField &F = r.field();
  auto r0 = field_inverse(F, residue_matrix(x));
  if (!r0) return std::nullopt;
  // Coefficient matrices of x and of the inverse, solved level by level:
  // sum_{i<=k} X_i Y_{k-i} = [k == 0] with Y_0 = X_0^{-1}.
  std::vector<FieldMat> xc(N, FieldMat(n, std::vector<uint32_t>(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < N; ++k) xc[k][i][j] = x.at(i, j)[k];
  std::vector<FieldMat> yc(N, FieldMat(n, std::vector<uint32_t>(n, 0)));
  yc[0] = *r0;
  for (int k = 1; k < N; ++k) {
    FieldMat s(n, std::vector<uint32_t>(n, 0));
    for (int i = 1; i <= k; ++i)
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          if (xc[i][a][c] == 0) continue;
          for (int b = 0; b < n; ++b)
            s[a][b] = F.add(s[a][b], F.mul(xc[i][a][c], yc[k - i][c][b]));
        }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        uint32_t v = 0;
        for (int c = 0; c < n; ++c) v = F.add(v, F.mul(yc[0][a][c], s[c][b]));
        yc[k][a][b] = F.neg(v);
      }
  }
  LoopMat out = mat_zero(r, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < N; ++k) out.at(i, j)[k] = yc[k][i][j];
  if (mat_mul(r, x, out) != mat_identity(r, n))
    throw std::logic_error("mat_inverse: lift failed to verify");
  return out;
}

std::string mat_str(const LoopMat &x) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < x.n; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < x.n; ++j) {
      os << (j ? ",[" : "[");
      const RingElt &e = x.at(i, j);
      for (size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
      os << "]";
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

MembershipFlags membership(const TruncRing &r, const LoopMat &g) {
  MembershipFlags f;
  f.in_K = field_inverse(r.field(), residue_matrix(g)).has_value();
  f.in_K1 = true;
  for (int i = 0; i < g.n && f.in_K1; ++i)
    for (int j = 0; j < g.n; ++j)
      if (g.at(i, j)[0] != (i == j ? 1u : 0u)) {
        f.in_K1 = false;
        break;
      }
  f.in_I = true;
  for (int i = 0; i < g.n && f.in_I; ++i) {
    if (g.at(i, i)[0] == 0) f.in_I = false;
    for (int j = 0; j < i; ++j)
      if (g.at(i, j)[0] != 0) f.in_I = false;
  }
  return f;
}

bool in_K_chi(const TruncRing &r, const LoopMat &g, const IntVec &chi) {
  if ((int)chi.size() != g.n) throw std::invalid_argument("in_K_chi: chi size mismatch");
  if (!membership(r, g).in_K) return false;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      long long need = std::max(0ll, chi[j] - chi[i]);
      if (r.valuation(g.at(i, j)) < need) return false;
    }
  return true;
}

LoopMat root_element(const TruncRing &r, int n, int i, int j, const RingElt &x) {
  if (i == j) throw std::invalid_argument("root_element: i and j must differ");
  LoopMat m = mat_identity(r, n);
  m.at(i, j) = x;
  return m;
}

LoopMat t_diag(const TruncRing &r, const IntVec &mu) {
  LoopMat m = mat_zero(r, (int)mu.size());
  for (size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] < 0) throw std::invalid_argument("t_diag: entries must be >= 0");
    m.at((int)i, (int)i) = r.t_power((int)mu[i]);
  }
  return m;
}

LoopMat monomial_matrix(const TruncRing &r, const IntVec &lambda,
                        const std::vector<int> &perm) {
  int n = (int)lambda.size();
  if ((int)perm.size() != n)
    throw std::invalid_argument("monomial_matrix: permutation size mismatch");
  LoopMat m = mat_zero(r, n);
  for (int j = 0; j < n; ++j) {
    int i = perm[j];
    if (lambda[i] < 0) throw std::invalid_argument("monomial_matrix: entries must be >= 0");
    m.at(i, j) = r.t_power((int)lambda[i]);
  }
  return m;
}

IwahoriFactors iwahori_factorize(const TruncRing &r, const LoopMat &c,
                                 const IntVec &chi) {
  int n = c.n;
  if (!std::is_sorted(chi.rbegin(), chi.rend()))
    throw std::invalid_argument("iwahori_factorize: chi must be dominant");
  if (!in_K_chi(r, c, chi)) throw std::invalid_argument("not in K_chi");

  // Blocks are the level sets of chi, contiguous since chi is sorted.
  std::vector<std::pair<int, int>> blocks; // [begin, end)
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && chi[j] == chi[i]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }

  LoopMat rmat = c, lower = mat_identity(r, n);
  for (auto [pb, pe] : blocks) {
    // Invert the pivot block over the ring.
    int bs = pe - pb;
    LoopMat d = mat_zero(r, bs);
    for (int i = 0; i < bs; ++i)
      for (int j = 0; j < bs; ++j) d.at(i, j) = rmat.at(pb + i, pb + j);
    auto dinv = mat_inverse(r, d);
    if (!dinv) throw std::invalid_argument("not in K_chi");
    for (auto [qb, qe] : blocks) {
      if (qb <= pb) continue;
      // mm = r[Q][P] * dinv; then row block Q -= mm * row block P, and
      // column block P of the accumulated lower factor += L[:,Q] * mm.
      int qs = qe - qb;
      std::vector<std::vector<RingElt>> mm(qs, std::vector<RingElt>(bs, r.zero()));
      for (int i = 0; i < qs; ++i)
        for (int j = 0; j < bs; ++j) {
          RingElt acc = r.zero();
          for (int k = 0; k < bs; ++k)
            acc = r.add(acc, r.mul(rmat.at(qb + i, pb + k), dinv->at(k, j)));
          mm[i][j] = acc;
        }
      for (int i = 0; i < qs; ++i)
        for (int col = 0; col < n; ++col) {
          RingElt acc = rmat.at(qb + i, col);
          for (int k = 0; k < bs; ++k)
            acc = r.sub(acc, r.mul(mm[i][k], rmat.at(pb + k, col)));
          rmat.at(qb + i, col) = acc;
        }
      for (int row = 0; row < n; ++row)
        for (int j = 0; j < bs; ++j) {
          RingElt acc = lower.at(row, pb + j);
          for (int k = 0; k < qs; ++k)
            acc = r.add(acc, r.mul(lower.at(row, qb + k), mm[k][j]));
          lower.at(row, pb + j) = acc;
        }
    }
  }

  IwahoriFactors out;
  out.u_minus = lower;
  out.m0 = mat_zero(r, n);
  for (auto [pb, pe] : blocks)
    for (int i = pb; i < pe; ++i)
      for (int j = pb; j < pe; ++j) out.m0.at(i, j) = rmat.at(i, j);
  auto m0inv = mat_inverse(r, out.m0);
  if (!m0inv) throw std::invalid_argument("not in K_chi");
  out.u_plus = mat_mul(r, rmat, *m0inv);
  if (mat_mul(r, out.u_minus, mat_mul(r, out.u_plus, out.m0)) != c)
    throw std::logic_error("iwahori_factorize: reassembly mismatch");
  return out;
}

std::optional<IntVec> cartan_invariant(const TruncRing &r, const LoopMat &g) {
  int n = g.n, N = r.N();
  // Budget gate: if det vanishes mod t^N the top divisor is out of range;
  // below it every d_k <= d_n is then computed exactly.
  RingElt det = minor_det(r, g, all_indices(n), all_indices(n));
  if (r.valuation(det) == N) return std::nullopt;
  std::vector<int> d(n + 1, 0);
  d[n] = r.valuation(det);
  for (int k = 1; k < n; ++k) {
    int best = N;
    std::vector<int> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<int> cols(k);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        best = std::min(best, r.valuation(minor_det(r, g, rows, cols)));
      } while (next_combination(cols, n));
    } while (next_combination(rows, n));
    if (best == N) throw std::logic_error("cartan_invariant: interior minor above budget");
    d[k] = best;
  }
  IntVec out(n);
  for (int k = 1; k <= n; ++k) out[n - k] = d[k] - d[k - 1]; // dominant order
  if (!std::is_sorted(out.rbegin(), out.rend()))
    throw std::logic_error("cartan_invariant: divisor gaps not convex");
  return out;
}

std::optional<RatVec> newton_invariant(const TruncRing &r, const LoopMat &g,
                                       int steps) {
  if (steps < 1) throw std::invalid_argument("newton_invariant: steps must be >= 1");
  LoopMat acc = g, cur = g;
  for (int i = 1; i < steps; ++i) {
    cur = mat_sigma(r, cur);
    acc = mat_mul(r, acc, cur);
  }
  auto cart = cartan_invariant(r, acc);
  if (!cart) return std::nullopt;
  RatVec out;
  out.reserve(cart->size());
  for (long long v : *cart) out.push_back(Rat(v, steps));
  return out;
}

LoopMat sigma_conjugate(const TruncRing &r, const LoopMat &h, const LoopMat &g) {
  auto hinv = mat_inverse(r, h);
  if (!hinv) throw std::invalid_argument("sigma_conjugate: h is not invertible");
  return mat_mul(r, mat_mul(r, h, g), mat_sigma(r, *hinv));
}

RingEmbedding::RingEmbedding(const TruncRing &from, const TruncRing &to)
    : from_(&from), to_(&to), phi_(from.field(), to.field()) {
  if (from.q() != to.q() || from.N() != to.N() || to.m() % from.m() != 0)
    throw std::invalid_argument("RingEmbedding: incompatible rings");
}

RingElt RingEmbedding::apply(const RingElt &a) const {
  RingElt out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = phi_(a[k]);
  return out;
}

LoopMat RingEmbedding::apply(const LoopMat &x) const {
  LoopMat out = x;
  for (auto &e : out.a) e = apply(e);
  return out;
}

namespace {

/// Scalar torus Lang step over one ring: x with sigma(x) = x * c for a unit
/// c, or nullopt when the residue or an Artin-Schreier level has no solution
/// in this coefficient field.
std::optional<RingElt> lang_scalar(const TruncRing &r, const RingElt &c) {
  const GFField &F = r.field();
  long long n = (long long)F.size() - 1;
  long long d = r.q() - 1;
  // Residue level: x0^(q-1) = c0, solved through discrete logs.
  long long a = F.log(c[0]);
  RingElt u;
  if (d == 0) throw std::logic_error("lang_scalar: q < 2");
  {
    long long g0 = gcd_ll(d, n);
    if (a % g0 != 0) return std::nullopt;
    long long nn = n / g0;
    long long b = nn == 1 ? 0 : (a / g0) % nn * modinv_ll(d / g0, nn) % nn;
    u = r.from_field(F.pow(F.generator(), b));
  }
  // t-adic levels: with u correct mod t^k, rho := sigma(u)^{-1} u c is
  // 1 + rho_k t^k + ..., and the correction z at level k solves the
  // Artin-Schreier equation z^q - z = rho_k.
  int dim = F.degree();
  int p = F.p();
  std::vector<std::vector<uint8_t>> frob_mat(dim, std::vector<uint8_t>(dim, 0));
  uint32_t basis = 1;
  for (int j = 0; j < dim; ++j) {
    uint32_t im = F.sub(F.frob_power(basis, r.e()), basis);
    for (int i = 0; i < dim; ++i) {
      frob_mat[i][j] = (uint8_t)(im % (uint32_t)p);
      im /= (uint32_t)p;
    }
    basis *= (uint32_t)p;
  }
  for (int k = 1; k < r.N(); ++k) {
    RingElt rho = r.mul(r.inv(r.sigma(u)), r.mul(u, c));
    if (rho[0] != 1) throw std::logic_error("lang_scalar: residue level regressed");
    for (int j = 1; j < k; ++j)
      if (rho[j] != 0) throw std::logic_error("lang_scalar: lower level regressed");
    if (rho[k] == 0) continue;
    std::vector<uint8_t> rhs(dim, 0);
    uint32_t v = rho[k];
    for (int i = 0; i < dim; ++i) {
      rhs[i] = (uint8_t)(v % (uint32_t)p);
      v /= (uint32_t)p;
    }
    auto z = solve_mod_p(frob_mat, rhs, p);
    if (!z) return std::nullopt;
    uint32_t zc = 0, mult = 1;
    for (int i = 0; i < dim; ++i) {
      zc += (uint32_t)(*z)[i] * mult;
      mult *= (uint32_t)p;
    }
    RingElt corr = r.one();
    corr[k] = zc;
    u = r.mul(u, corr);
  }
  if (r.mul(u, c) != r.sigma(u))
    throw std::logic_error("lang_scalar: solution failed to verify");
  return u;
}

} // namespace

std::optional<TorusLang> solve_torus_lang(const TruncRing &r, const LoopMat &c,
                                          int m_cap) {
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      if (i == j && !r.is_unit(c.at(i, j)))
        throw std::invalid_argument("solve_torus_lang: diagonal entries must be units");
      if (i != j && r.valuation(c.at(i, j)) != r.N())
        throw std::invalid_argument("solve_torus_lang: c must be diagonal");
    }
  for (int mp = r.m(); mp <= m_cap && r.e() * mp <= 12; mp += r.m()) {
    TruncRing ext(r.q(), mp, r.N());
    RingEmbedding emb(r, ext);
    LoopMat h = mat_identity(ext, c.n);
    bool ok = true;
    for (int i = 0; i < c.n && ok; ++i) {
      auto x = lang_scalar(ext, emb.apply(c.at(i, i)));
      if (!x)
        ok = false;
      else
        h.at(i, i) = *x;
    }
    if (!ok) continue;
    auto hinv = mat_inverse(ext, h);
    if (!hinv || mat_mul(ext, *hinv, mat_sigma(ext, h)) != emb.apply(c))
      throw std::logic_error("solve_torus_lang: assembled solution failed to verify");
    return TorusLang{ext, h, mp};
  }
  return std::nullopt;
}

namespace {

/// Coordinate bookkeeping for the F_p-linear conjugator equation
/// h * g = t^mu * sigma(h): global coordinate of (entry, t-power, digit).
struct ConjCoords {
  int n, N, dim, p;
  std::vector<int> domain; // global coordinates allowed for h
  std::vector<int> col_of; // global coordinate -> column, or -1

  ConjCoords(int n_, int N_, int dim_, int p_, bool iwahori) : n(n_), N(N_), dim(dim_), p(p_) {
    int total = n * n * N * dim;
    col_of.assign(total, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < N; ++k) {
          if (iwahori && i > j && k == 0) continue; // residue below the diagonal
          for (int d = 0; d < dim; ++d) {
            int g = ((i * n + j) * N + k) * dim + d;
            col_of[g] = (int)domain.size();
            domain.push_back(g);
          }
        }
  }
  int coord(int i, int j, int k, int d) const { return ((i * n + j) * N + k) * dim + d; }
};

LoopMat mat_from_coords(const TruncRing &r, const ConjCoords &cc,
                        const std::vector<uint8_t> &x) {
  LoopMat h = mat_zero(r, cc.n);
  for (size_t c = 0; c < cc.domain.size(); ++c) {
    if (x[c] == 0) continue;
    int g = cc.domain[c];
    int d = g % cc.dim;
    int k = (g / cc.dim) % cc.N;
    int ij = g / (cc.dim * cc.N);
    uint32_t unit = 1;
    for (int t = 0; t < d; ++t) unit *= (uint32_t)cc.p;
    h.a[ij][k] = r.field().add(h.a[ij][k], r.field().mul(r.field().from_int(x[c]), unit));
  }
  return h;
}

} // namespace

ConjugatorResult find_sigma_conjugator(const TruncRing &r, const LoopMat &g,
                                       const IntVec &mu,
                                       const ConjugatorOptions &opt) {
  if ((int)mu.size() != g.n)
    throw std::invalid_argument("find_sigma_conjugator: mu size mismatch");
  std::vector<int> schedule;
  for (int mp : opt.m_schedule)
    if (mp % r.m() == 0 && r.e() * mp <= 12 && mp >= r.m()) schedule.push_back(mp);
  if (schedule.empty())
    throw std::invalid_argument("find_sigma_conjugator: schedule has no usable degree");
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

  int n = g.n, N = r.N(), p = r.p();
  bool all_levels_complete = true;
  for (int mp : schedule) {
    TruncRing ext(r.q(), mp, r.N());
    RingEmbedding emb(r, ext);
    LoopMat ge = emb.apply(g);
    LoopMat tau = t_diag(ext, mu);
    int dim = ext.field().degree();
    ConjCoords cc(n, N, dim, p, opt.in_iwahori);

    // Column c of the equation matrix: image of the basis matrix E_{ij} xi,
    // with xi = x^d t^k; the image lives in row i only.
    int out_dim = n * n * N * dim;
    std::vector<std::vector<uint8_t>> eqn(out_dim, std::vector<uint8_t>((int)cc.domain.size(), 0));
    for (size_t col = 0; col < cc.domain.size(); ++col) {
      int gcoord = cc.domain[col];
      int d = gcoord % dim;
      int k = (gcoord / dim) % N;
      int ij = gcoord / (dim * N);
      int i = ij / n, j = ij % n;
      RingElt xi = ext.zero();
      uint32_t unit = 1;
      for (int t = 0; t < d; ++t) unit *= (uint32_t)p;
      xi[k] = unit;
      RingElt tmu = ext.t_power((int)mu[i]);
      RingElt corr = ext.mul(tmu, ext.sigma(xi)); // (t^mu sigma(h))(i, j)
      for (int j2 = 0; j2 < n; ++j2) {
        RingElt val = ext.mul(xi, ge.at(j, j2)); // (h g)(i, j2)
        if (j2 == j) val = ext.sub(val, corr);
        for (int kk = 0; kk < N; ++kk) {
          uint32_t v = val[kk];
          for (int dd = 0; dd < dim && v; ++dd) {
            eqn[cc.coord(i, j2, kk, dd)][col] = (uint8_t)(v % (uint32_t)p);
            v /= (uint32_t)p;
          }
        }
      }
    }
    auto kernel = nullspace_mod_p(std::move(eqn), p, (int)cc.domain.size());
    int kdim = (int)kernel.size();

    long long total = 1;
    bool overflow = false;
    for (int i = 0; i < kdim && !overflow; ++i) {
      total *= p;
      if (total > opt.exhaustive_cap) overflow = true;
    }
    auto candidate_valid = [&](const LoopMat &h) {
      MembershipFlags f = membership(ext, h);
      return opt.in_iwahori ? f.in_I : f.in_K;
    };
    auto accept = [&](const LoopMat &h) -> ConjugatorResult {
      if (sigma_conjugate(ext, h, ge) != tau)
        throw std::logic_error("find_sigma_conjugator: kernel element failed direct check");
      return ConjugatorResult{ConjugatorStatus::found, mp, ext, h};
    };

    std::vector<uint8_t> combo((size_t)cc.domain.size(), 0);
    if (!overflow) {
      // Full kernel sweep: a miss here proves no conjugator at this degree.
      std::vector<uint8_t> digits(kdim, 0);
      for (long long code = 1; code < total; ++code) {
        int c0 = 0;
        while (true) {
          if (++digits[c0] < p) break;
          digits[c0] = 0;
          ++c0;
        }
        std::fill(combo.begin(), combo.end(), 0);
        for (int b = 0; b < kdim; ++b) {
          if (digits[b] == 0) continue;
          for (size_t c = 0; c < combo.size(); ++c)
            combo[c] = (uint8_t)((combo[c] + digits[b] * kernel[b][c]) % p);
        }
        LoopMat h = mat_from_coords(ext, cc, combo);
        if (candidate_valid(h)) return accept(h);
      }
    } else {
      all_levels_complete = false;
      LoopRng rng(opt.seed + 0x9e3779b97f4a7c15ull * (uint64_t)mp);
      for (int trial = 0; trial < opt.random_tries; ++trial) {
        std::fill(combo.begin(), combo.end(), 0);
        bool nonzero = false;
        for (int b = 0; b < kdim; ++b) {
          uint8_t dg = (uint8_t)rng.below((uint64_t)p);
          if (dg == 0) continue;
          nonzero = true;
          for (size_t c = 0; c < combo.size(); ++c)
            combo[c] = (uint8_t)((combo[c] + dg * kernel[b][c]) % p);
        }
        if (!nonzero) continue;
        LoopMat h = mat_from_coords(ext, cc, combo);
        if (candidate_valid(h)) return accept(h);
      }
    }
  }
  ConjugatorResult out;
  out.status = all_levels_complete ? ConjugatorStatus::exhausted : ConjugatorStatus::unresolved;
  return out;
}

RingElt random_ring_elt(const TruncRing &r, LoopRng &rng) {
  RingElt out(r.N());
  for (int k = 0; k < r.N(); ++k) out[k] = (uint32_t)rng.below(r.field().size());
  return out;
}

LoopMat random_K(const TruncRing &r, int n, LoopRng &rng) {
  LoopMat g = mat_zero(r, n);
  for (;;) {
    FieldMat res(n, std::vector<uint32_t>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) res[i][j] = (uint32_t)rng.below(r.field().size());
    if (!field_inverse(r.field(), res)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g.at(i, j)[0] = res[i][j];
        for (int k = 1; k < r.N(); ++k) g.at(i, j)[k] = (uint32_t)rng.below(r.field().size());
      }
    return g;
  }
}

LoopMat random_K1(const TruncRing &r, int n, LoopRng &rng) {
  LoopMat g = mat_identity(r, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 1; k < r.N(); ++k) g.at(i, j)[k] = (uint32_t)rng.below(r.field().size());
  return g;
}

LoopMat random_I(const TruncRing &r, int n, LoopRng &rng) {
  LoopMat g = mat_zero(r, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        g.at(i, j)[0] = 1 + (uint32_t)rng.below(r.field().size() - 1);
      else if (i < j)
        g.at(i, j)[0] = (uint32_t)rng.below(r.field().size());
      for (int k = 1; k < r.N(); ++k) g.at(i, j)[k] = (uint32_t)rng.below(r.field().size());
    }
  return g;
}

} // namespace strat
