#include "strat/rootdata.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace strat {

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::Sp: return "Sp";
    case Family::GSp: return "GSp";
  }
  throw std::logic_error("family_name: bad enum");
}

namespace {

IntVec unit(int dim, int i, long long c = 1) {
  IntVec v(dim, 0);
  v[i] = c;
  return v;
}

void push_root(RootDatum &d, IntVec root, IntVec coroot) {
  d.roots.push_back(std::move(root));
  d.coroots.push_back(std::move(coroot));
}

// All positive roots/coroots of the family, in a fixed deterministic order
// (type A: e_i - e_j by (i,j); type C: short differences, short sums, longs).
void fill_positive_roots(RootDatum &d) {
  int n = d.rank;
  switch (d.family) {
    case Family::GL:
    case Family::SL:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          IntVec r = vec_sub(unit(n, i), unit(n, j));
          push_root(d, r, r);
        }
      break;
    case Family::Sp: {
      int m = n / 2;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          IntVec r = vec_sub(unit(m, i), unit(m, j));
          push_root(d, r, r);
        }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          IntVec r = vec_add(unit(m, i), unit(m, j));
          push_root(d, r, r);
        }
      for (int i = 0; i < m; ++i) push_root(d, unit(m, i, 2), unit(m, i));
      break;
    }
    case Family::GSp: {
      int m = n / 2;
      int dim = m + 1;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          IntVec r = vec_sub(unit(dim, i), unit(dim, j));
          push_root(d, r, r);
        }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          IntVec r = vec_sub(vec_add(unit(dim, i), unit(dim, j)), unit(dim, m));
          push_root(d, r, vec_add(unit(dim, i), unit(dim, j)));
        }
      for (int i = 0; i < m; ++i)
        push_root(d, vec_sub(unit(dim, i, 2), unit(dim, m)), unit(dim, i));
      break;
    }
  }
}

// Simple root indices within the positive list, by family convention.
std::vector<int> simple_positions(const RootDatum &d) {
  std::vector<int> simple;
  int n = d.rank;
  auto find_root = [&](const IntVec &r) {
    for (int k = 0; k < d.n_pos(); ++k)
      if (d.roots[d.positive_indices[k]] == r) return k;
    throw std::logic_error("simple root not found in positive list");
  };
  switch (d.family) {
    case Family::GL:
    case Family::SL:
      for (int i = 0; i + 1 < n; ++i)
        simple.push_back(find_root(vec_sub(unit(n, i), unit(n, i + 1))));
      break;
    case Family::Sp: {
      int m = n / 2;
      for (int i = 0; i + 1 < m; ++i)
        simple.push_back(find_root(vec_sub(unit(m, i), unit(m, i + 1))));
      simple.push_back(find_root(unit(m, m - 1, 2)));
      break;
    }
    case Family::GSp: {
      int m = n / 2, dim = m + 1;
      for (int i = 0; i + 1 < m; ++i)
        simple.push_back(find_root(vec_sub(unit(dim, i), unit(dim, i + 1))));
      simple.push_back(find_root(vec_sub(unit(dim, m - 1, 2), unit(dim, m))));
      break;
    }
  }
  return simple;
}

IntMat neg_w0_matrix(int n) {
  // v -> -w0(v) for type A in ambient coordinates: negate and reverse.
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][n - 1 - i] = -1;
  return m;
}

int matrix_order(const IntMat &m, int guard = 64) {
  IntMat p = m;
  IntMat id = identity_mat((int)m.size());
  for (int k = 1; k <= guard; ++k) {
    if (p == id) return k;
    p = mat_mul(p, m);
  }
  throw std::logic_error("matrix_order: order exceeds guard");
}

} // namespace

RootDatum build_root_datum(const GroupSpec &spec) {
  RootDatum d;
  d.family = spec.family;
  d.rank = spec.rank;
  d.sigma_kind = spec.sigma;

  switch (spec.family) {
    case Family::GL:
    case Family::SL:
      if (spec.rank < 1) throw std::invalid_argument("rank must be >= 1");
      d.dim = spec.rank;
      d.ss_rank = spec.rank - 1;
      d.cochar_rank = (spec.family == Family::SL) ? spec.rank - 1 : spec.rank;
      break;
    case Family::Sp:
    case Family::GSp:
      if (spec.rank < 2 || spec.rank % 2 != 0)
        throw std::invalid_argument("Sp/GSp rank is the (even) matrix size 2n");
      d.dim = spec.rank / 2 + (spec.family == Family::GSp ? 1 : 0);
      d.ss_rank = spec.rank / 2;
      d.cochar_rank = d.dim;
      break;
  }

  d.simple_indices.clear();
  fill_positive_roots(d);
  int P = (int)d.roots.size();
  d.positive_indices.resize(P);
  for (int k = 0; k < P; ++k) d.positive_indices[k] = k;
  // Negatives appended after all positives.
  for (int k = 0; k < P; ++k) {
    IntVec r = d.roots[k], c = d.coroots[k];
    for (auto &x : r) x = -x;
    for (auto &x : c) x = -x;
    push_root(d, r, c);
  }
  {
    auto simple = simple_positions(d);
    d.simple_indices.clear();
    for (int k : simple) d.simple_indices.push_back(d.positive_indices[k]);
  }

  // Cocharacter lattice basis.
  d.cochar_basis.clear();
  if (spec.family == Family::SL) {
    for (int i = 0; i + 1 < d.dim; ++i)
      d.cochar_basis.push_back(vec_sub(unit(d.dim, i), unit(d.dim, i + 1)));
  } else {
    for (int i = 0; i < d.dim; ++i) d.cochar_basis.push_back(unit(d.dim, i));
  }

  // Coroot lattice basis via column span of the simple coroots.
  {
    IntMat cols(d.dim, IntVec(d.ss_rank, 0));
    for (int j = 0; j < d.ss_rank; ++j) {
      const IntVec &cr = d.simple_coroot(j);
      for (int i = 0; i < d.dim; ++i) cols[i][j] = cr[i];
    }
    SmithForm s = smith_normal_form(cols);
    d.coroot_lattice_basis.clear();
    for (size_t k = 0; k < s.divisors.size(); ++k) {
      if (s.divisors[k] == 0) continue;
      IntVec b(d.dim, 0);
      for (int i = 0; i < d.dim; ++i) b[i] = s.u_inv[i][k] * s.divisors[k];
      d.coroot_lattice_basis.push_back(b);
    }
  }

  // Sigma action.
  if (spec.sigma == SigmaKind::identity) {
    d.sigma_cochar = identity_mat(d.dim);
    d.sigma_char = identity_mat(d.dim);
    d.sigma_order = 1;
  } else {
    if (spec.family != Family::GL && spec.family != Family::SL)
      throw std::invalid_argument(
          "nontrivial diagram automorphism: type C admits none "
          "(no Cartan-matrix symmetry besides the identity)");
    d.sigma_cochar = neg_w0_matrix(d.dim);
    d.sigma_order = matrix_order(d.sigma_cochar);
    // Contragredient: (sigma^{-1})^T; the matrix is an involution here.
    d.sigma_char = mat_transpose(mat_pow(d.sigma_cochar, d.sigma_order - 1));
  }

  // Consistency: <alpha, alpha^vee> = 2 for every root.
  for (size_t k = 0; k < d.roots.size(); ++k) {
    if (dot(d.roots[k], d.coroots[k]) != 2)
      throw std::logic_error("root datum: <alpha, alpha^vee> != 2");
  }
  // Sigma must permute the roots (preserving positivity) and the coroots.
  for (int k = 0; k < d.n_pos(); ++k) {
    IntVec img = mat_apply(d.sigma_cochar, d.pos_coroot(k));
    bool found = false;
    for (int l = 0; l < d.n_pos(); ++l)
      if (d.pos_coroot(l) == img) { found = true; break; }
    if (!found)
      throw std::logic_error("root datum: sigma does not permute positive coroots");
  }
  return d;
}

long long pairing(const RootDatum &datum, const IntVec &chi, const Cochar &v) {
  if ((int)chi.size() != datum.dim || (int)v.size() != datum.dim)
    throw std::invalid_argument("pairing: dimension mismatch");
  return dot(chi, v);
}

Rat pairing(const RootDatum &datum, const IntVec &chi, const RatCochar &v) {
  if ((int)chi.size() != datum.dim || (int)v.size() != datum.dim)
    throw std::invalid_argument("pairing: dimension mismatch");
  return dot(chi, v);
}

bool is_dominant(const RootDatum &datum, const Cochar &v) {
  for (int i = 0; i < datum.ss_rank; ++i)
    if (pairing(datum, datum.simple_root(i), v) < 0) return false;
  return true;
}

bool is_dominant(const RootDatum &datum, const RatCochar &v) {
  for (int i = 0; i < datum.ss_rank; ++i)
    if (pairing(datum, datum.simple_root(i), v).sign() < 0) return false;
  return true;
}

DominantRep dominant_representative(const RootDatum &datum, const RatCochar &v) {
  DominantRep rep;
  rep.vplus = v;
  // Repeatedly reflect at the first violated simple root; terminates because
  // each step moves the vector strictly up in the dominance order.
  bool changed = true;
  size_t guard = 0;
  while (changed) {
    changed = false;
    for (int i = 0; i < datum.ss_rank; ++i) {
      Rat p = pairing(datum, datum.simple_root(i), rep.vplus);
      if (p.sign() < 0) {
        const IntVec &cv = datum.simple_coroot(i);
        for (int c = 0; c < datum.dim; ++c)
          rep.vplus[c] -= p * Rat(cv[c]);
        rep.raw_word.push_back(i);
        changed = true;
        if (++guard > 1000000) throw std::logic_error("dominant_representative: no convergence");
        break;
      }
    }
  }
  return rep;
}

Cochar sigma_apply(const RootDatum &datum, const Cochar &v) {
  return mat_apply(datum.sigma_cochar, v);
}

RatCochar sigma_apply(const RootDatum &datum, const RatCochar &v) {
  return mat_apply(datum.sigma_cochar, v);
}

Cochar sigma_apply_inv(const RootDatum &datum, const Cochar &v) {
  Cochar r = v;
  for (int i = 0; i < datum.sigma_order - 1; ++i) r = mat_apply(datum.sigma_cochar, r);
  return r;
}

IntVec sigma_apply_char(const RootDatum &datum, const IntVec &chi) {
  return mat_apply(datum.sigma_char, chi);
}

IntMat reflection_matrix(const RootDatum &datum, const IntVec &alpha,
                         const IntVec &alpha_vee) {
  IntMat m = identity_mat(datum.dim);
  // column j of s_alpha: e_j - <alpha, e_j> alpha^vee
  for (int j = 0; j < datum.dim; ++j)
    for (int i = 0; i < datum.dim; ++i) m[i][j] -= alpha[j] * alpha_vee[i];
  return m;
}

bool in_cochar_lattice(const RootDatum &datum, const Cochar &v) {
  if ((int)v.size() != datum.dim) return false;
  if (datum.family == Family::SL) {
    long long s = 0;
    for (long long x : v) s += x;
    return s == 0;
  }
  return true;
}

IntVec cochar_in_basis(const RootDatum &datum, const Cochar &v) {
  if (!in_cochar_lattice(datum, v))
    throw std::invalid_argument("cochar_in_basis: vector not in X_*(T)");
  // Solve basis^T x = v exactly and check integrality.
  RatMat a(datum.dim, RatVec(datum.cochar_basis.size(), Rat(0)));
  for (size_t j = 0; j < datum.cochar_basis.size(); ++j)
    for (int i = 0; i < datum.dim; ++i) a[i][j] = Rat(datum.cochar_basis[j][i]);
  auto x = rat_solve(a, to_ratvec(v));
  if (!x) throw std::invalid_argument("cochar_in_basis: vector not in X_*(T)");
  IntVec out(x->size());
  for (size_t i = 0; i < x->size(); ++i) {
    if (!(*x)[i].is_integer())
      throw std::invalid_argument("cochar_in_basis: non-integral coordinates");
    out[i] = (*x)[i].num();
  }
  return out;
}

namespace {

std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<long long> parse_int_list(const std::string &s, const char *what) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw std::invalid_argument(std::string("empty entry in ") + what);
    size_t pos = 0;
    long long v;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception &) {
      throw std::invalid_argument(std::string("bad integer in ") + what + ": " + tok);
    }
    if (pos != tok.size())
      throw std::invalid_argument(std::string("bad integer in ") + what + ": " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty list for ") + what);
  return out;
}

} // namespace

SpecFile parse_spec_file(const std::string &text) {
  SpecFile sf;
  bool have_family = false, have_rank = false;
  std::string sigma_value = "identity";
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("not key=value: " + line);
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key == "family") {
        if (value == "GL") sf.group.family = Family::GL;
        else if (value == "SL") sf.group.family = Family::SL;
        else if (value == "Sp") sf.group.family = Family::Sp;
        else if (value == "GSp") sf.group.family = Family::GSp;
        else throw std::invalid_argument("unknown family: " + value);
        have_family = true;
      } else if (key == "rank") {
        sf.group.rank = (int)parse_int_list(value, "rank")[0];
        have_rank = true;
      } else if (key == "sigma") {
        sigma_value = value;
      } else if (key == "mu") {
        auto vals = parse_int_list(value, "mu");
        sf.mu = Cochar(vals.begin(), vals.end());
      } else {
        throw std::invalid_argument("unknown spec key: " + key);
      }
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  if (!have_family || !have_rank)
    throw std::invalid_argument("spec must set family and rank");

  // Resolve sigma after family/rank are known.
  GroupSpec probe = sf.group;
  probe.sigma = SigmaKind::identity;
  RootDatum plain = build_root_datum(probe);
  if (sigma_value == "identity") {
    sf.group.sigma = SigmaKind::identity;
  } else if (sigma_value == "dual") {
    sf.group.sigma = SigmaKind::dual;
  } else if (sigma_value.rfind("perm:", 0) == 0) {
    auto imgs = parse_int_list(sigma_value.substr(5), "sigma permutation");
    if ((int)imgs.size() != plain.ss_rank)
      throw std::invalid_argument("sigma permutation length != number of simple roots");
    std::vector<int> perm(imgs.size());
    std::vector<bool> seen(imgs.size(), false);
    for (size_t i = 0; i < imgs.size(); ++i) {
      if (imgs[i] < 1 || imgs[i] > (long long)imgs.size())
        throw std::invalid_argument("sigma permutation index out of range");
      perm[i] = (int)imgs[i] - 1;
      if (seen[perm[i]]) throw std::invalid_argument("sigma is not a permutation");
      seen[perm[i]] = true;
    }
    // Cartan-matrix preservation: <alpha_{p(i)}, alpha_{p(j)}^vee> must equal
    // <alpha_i, alpha_j^vee> for all i, j.
    for (int i = 0; i < plain.ss_rank; ++i)
      for (int j = 0; j < plain.ss_rank; ++j) {
        long long lhs = dot(plain.simple_root(perm[i]), plain.simple_coroot(perm[j]));
        long long rhs = dot(plain.simple_root(i), plain.simple_coroot(j));
        if (lhs != rhs)
          throw std::invalid_argument(
              "sigma permutation violates the Cartan matrix at entry (" +
              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    bool is_id = true, is_rev = true;
    for (int i = 0; i < plain.ss_rank; ++i) {
      if (perm[i] != i) is_id = false;
      if (perm[i] != plain.ss_rank - 1 - i) is_rev = false;
    }
    if (is_id) sf.group.sigma = SigmaKind::identity;
    else if (is_rev && (sf.group.family == Family::GL || sf.group.family == Family::SL))
      sf.group.sigma = SigmaKind::dual;
    else
      throw std::invalid_argument("unsupported diagram automorphism");
  } else {
    throw std::invalid_argument("sigma must be identity, dual, or perm:...");
  }

  // Validate the resolved group (rejects e.g. a dual twist on type C).
  RootDatum d = build_root_datum(sf.group);
  if (sf.mu) {
    if ((int)sf.mu->size() != d.dim)
      throw std::invalid_argument("mu length does not match the group");
    if (!in_cochar_lattice(d, *sf.mu))
      throw std::invalid_argument("mu is not a cocharacter of the group");
  }
  return sf;
}

} // namespace strat
