#include "strat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strat {

IntMat identity_mat(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mul(const IntMat &a, const IntMat &b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(m, 0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("mat_mul: shape mismatch");
    for (size_t t = 0; t < k; ++t) {
      long long av = a[i][t];
      if (av == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += av * b[t][j];
    }
  }
  return c;
}

IntVec mat_apply(const IntMat &m, const IntVec &v) {
  IntVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

RatVec mat_apply(const IntMat &m, const RatVec &v) {
  RatVec r(m.size(), Rat(0));
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    for (size_t j = 0; j < v.size(); ++j) r[i] += Rat(m[i][j]) * v[j];
  }
  return r;
}

IntMat mat_transpose(const IntMat &m) {
  if (m.empty()) return m;
  IntMat t(m[0].size(), IntVec(m.size(), 0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

bool mat_eq(const IntMat &a, const IntMat &b) { return a == b; }

IntMat mat_pow(const IntMat &m, int k) {
  IntMat r = identity_mat((int)m.size());
  for (int i = 0; i < k; ++i) r = mat_mul(r, m);
  return r;
}

long long dot(const IntVec &a, const IntVec &b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec &a, const RatVec &b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

IntVec vec_add(const IntVec &a, const IntVec &b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec vec_sub(const IntVec &a, const IntVec &b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec vec_add(const RatVec &a, const RatVec &b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec vec_sub(const RatVec &a, const RatVec &b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec vec_scale(const RatVec &a, const Rat &c) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

RatVec to_ratvec(const IntVec &v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RatMat &m) {
  std::vector<int> pivots;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back((int)c);
    ++r;
  }
  return pivots;
}

} // namespace

std::optional<RatVec> rat_solve(const RatMat &a, const RatVec &b) {
  size_t rows = a.size();
  if (rows != b.size()) throw std::invalid_argument("rat_solve: shape mismatch");
  size_t cols = rows ? a[0].size() : 0;
  RatMat aug(rows, RatVec(cols + 1, Rat(0)));
  for (size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw std::invalid_argument("rat_solve: ragged matrix");
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<int> pivots = rref(aug);
  // Inconsistent iff a pivot landed in the augmented column.
  if (!pivots.empty() && pivots.back() == (int)cols) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

std::vector<RatVec> rat_nullspace(const RatMat &a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  RatMat m = a;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    RatVec v(cols, Rat(0));
    v[free_c] = Rat(1);
    for (size_t r = 0; r < pivots.size(); ++r) {
      if ((size_t)pivots[r] < free_c) v[pivots[r]] = -m[r][free_c];
    }
    basis.push_back(v);
  }
  return basis;
}

namespace {

struct SmithWork {
  IntMat a, u, u_inv, v;

  void row_swap(size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (auto &row : u_inv) std::swap(row[i], row[j]);
  }
  void col_swap(size_t i, size_t j) {
    for (auto &row : a) std::swap(row[i], row[j]);
    for (auto &row : v) std::swap(row[i], row[j]);
  }
  // row i -= f * row j
  void row_axpy(size_t i, size_t j, long long f) {
    for (size_t c = 0; c < a[i].size(); ++c) a[i][c] -= f * a[j][c];
    for (size_t c = 0; c < u[i].size(); ++c) u[i][c] -= f * u[j][c];
    for (auto &row : u_inv) row[j] += f * row[i];
  }
  // col i -= f * col j
  void col_axpy(size_t i, size_t j, long long f) {
    for (auto &row : a) row[i] -= f * row[j];
    for (auto &row : v) row[i] -= f * row[j];
  }
  void row_negate(size_t i) {
    for (auto &x : a[i]) x = -x;
    for (auto &x : u[i]) x = -x;
    for (auto &row : u_inv) row[i] = -row[i];
  }
};

} // namespace

SmithForm smith_normal_form(const IntMat &a_in) {
  size_t rows = a_in.size();
  size_t cols = rows ? a_in[0].size() : 0;
  for (const auto &r : a_in)
    if (r.size() != cols) throw std::invalid_argument("smith_normal_form: ragged matrix");

  SmithWork w;
  w.a = a_in;
  w.u = identity_mat((int)rows);
  w.u_inv = identity_mat((int)rows);
  w.v = identity_mat((int)cols);

  size_t k = 0;
  size_t lim = std::min(rows, cols);
  while (k < lim) {
    // Find a nonzero pivot of minimal absolute value in the trailing block.
    size_t pi = k, pj = k;
    long long best = 0;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j) {
        long long v = std::llabs(w.a[i][j]);
        if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
      }
    if (best == 0) break; // trailing block is zero
    w.row_swap(k, pi);
    w.col_swap(k, pj);
    bool dirty = false;
    for (size_t i = k + 1; i < rows; ++i) {
      if (w.a[i][k] == 0) continue;
      long long q = w.a[i][k] / w.a[k][k];
      w.row_axpy(i, k, q);
      if (w.a[i][k] != 0) dirty = true;
    }
    for (size_t j = k + 1; j < cols; ++j) {
      if (w.a[k][j] == 0) continue;
      long long q = w.a[k][j] / w.a[k][k];
      w.col_axpy(j, k, q);
      if (w.a[k][j] != 0) dirty = true;
    }
    if (dirty) continue; // remainders left; re-run pivot selection at k
    // Divisibility: the pivot must divide the whole trailing block.
    bool fixed = false;
    for (size_t i = k + 1; i < rows && !fixed; ++i)
      for (size_t j = k + 1; j < cols && !fixed; ++j) {
        if (w.a[i][j] % w.a[k][k] != 0) {
          // Fold row i into row k and retry this pivot.
          w.row_axpy(k, i, -1);
          fixed = true;
        }
      }
    if (fixed) continue;
    if (w.a[k][k] < 0) w.row_negate(k);
    ++k;
  }

  SmithForm out;
  out.u = w.u;
  out.u_inv = w.u_inv;
  out.v = w.v;
  out.d = w.a;
  out.divisors.assign(lim, 0);
  for (size_t i = 0; i < lim; ++i) out.divisors[i] = w.a[i][i];
  return out;
}

} // namespace strat
