#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "strat/rootdata.hpp"

using namespace strat;

namespace {

RootDatum make(Family f, int rank, SigmaKind s = SigmaKind::identity) {
  GroupSpec spec;
  spec.family = f;
  spec.rank = rank;
  spec.sigma = s;
  return build_root_datum(spec);
}

// Is v an integer combination of the given lattice rows?
bool in_row_lattice(const IntMat &rows, const IntVec &v) {
  if (rows.empty()) {
    for (long long x : v)
      if (x != 0) return false;
    return true;
  }
  RatMat a(v.size(), RatVec(rows.size(), Rat(0)));
  for (size_t j = 0; j < rows.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) a[i][j] = Rat(rows[j][i]);
  auto x = rat_solve(a, to_ratvec(v));
  if (!x) return false;
  RatVec back(v.size(), Rat(0));
  for (size_t j = 0; j < rows.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) back[i] += (*x)[j] * Rat(rows[j][i]);
  if (!ratvec_eq(back, to_ratvec(v))) return false;
  for (const auto &c : *x)
    if (!c.is_integer()) return false;
  return true;
}

} // namespace

TEST_CASE("root counts and simple systems per family") {
  auto gl2 = make(Family::GL, 2);
  CHECK(gl2.dim == 2);
  CHECK(gl2.ss_rank == 1);
  CHECK(gl2.n_pos() == 1);
  CHECK(gl2.roots.size() == 2);
  CHECK(gl2.simple_root(0) == IntVec{1, -1});
  CHECK(gl2.simple_coroot(0) == IntVec{1, -1});

  auto gl3 = make(Family::GL, 3);
  CHECK(gl3.n_pos() == 3);
  CHECK(gl3.ss_rank == 2);
  CHECK(gl3.simple_root(0) == IntVec{1, -1, 0});
  CHECK(gl3.simple_root(1) == IntVec{0, 1, -1});

  auto sl3 = make(Family::SL, 3);
  CHECK(sl3.n_pos() == 3);
  CHECK(sl3.cochar_rank == 2);
  CHECK(sl3.cochar_basis.size() == 2);

  auto sp4 = make(Family::Sp, 4);
  CHECK(sp4.dim == 2);
  CHECK(sp4.ss_rank == 2);
  CHECK(sp4.n_pos() == 4); // e1-e2, e1+e2, 2e1, 2e2
  CHECK(sp4.simple_root(0) == IntVec{1, -1});
  CHECK(sp4.simple_root(1) == IntVec{0, 2});
  CHECK(sp4.simple_coroot(1) == IntVec{0, 1}); // long root, short coroot

  auto gsp4 = make(Family::GSp, 4);
  CHECK(gsp4.dim == 3);
  CHECK(gsp4.ss_rank == 2);
  CHECK(gsp4.n_pos() == 4);
  CHECK(gsp4.simple_root(0) == IntVec{1, -1, 0});
  CHECK(gsp4.simple_root(1) == IntVec{0, 2, -1});
  CHECK(gsp4.simple_coroot(1) == IntVec{0, 1, 0});

  CHECK_THROWS(make(Family::Sp, 3)); // odd matrix size
}

TEST_CASE("pairing matches the coordinate dot product") {
  auto gl2 = make(Family::GL, 2);
  CHECK(pairing(gl2, IntVec{1, -1}, Cochar{1, 0}) == 1);
  CHECK(pairing(gl2, IntVec{1, -1}, RatCochar{Rat(1, 2), Rat(1, 2)}) == Rat(0));
  auto gl3 = make(Family::GL, 3);
  CHECK(pairing(gl3, IntVec{1, -1, 0}, Cochar{1, 0, 0}) == 1);
  CHECK_THROWS(pairing(gl2, IntVec{1, -1}, Cochar{1, 0, 0}));
}

TEST_CASE("dominance") {
  auto gl2 = make(Family::GL, 2);
  CHECK(is_dominant(gl2, Cochar{1, 0}));
  CHECK(!is_dominant(gl2, Cochar{0, 1}));
  auto gl3 = make(Family::GL, 3);
  CHECK(is_dominant(gl3, RatCochar{Rat(1, 3), Rat(1, 3), Rat(1, 3)}));

  // Simple-root dominance agrees with all-positive-root dominance.
  auto sp4 = make(Family::Sp, 4);
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<long long> coef(-4, 4);
  for (int trial = 0; trial < 500; ++trial) {
    Cochar v(sp4.dim);
    for (auto &x : v) x = coef(rng);
    bool all_pos = true;
    for (int k = 0; k < sp4.n_pos(); ++k)
      if (pairing(sp4, sp4.pos_root(k), v) < 0) all_pos = false;
    CHECK(is_dominant(sp4, v) == all_pos);
  }
}

TEST_CASE("dominant_representative: frozen values and sort oracle") {
  auto gl2 = make(Family::GL, 2);
  auto r = dominant_representative(gl2, RatCochar{Rat(0), Rat(1)});
  CHECK(ratvec_eq(r.vplus, RatCochar{Rat(1), Rat(0)}));
  CHECK(r.raw_word == std::vector<int>{0});

  auto rid = dominant_representative(gl2, RatCochar{Rat(1), Rat(0)});
  CHECK(ratvec_eq(rid.vplus, RatCochar{Rat(1), Rat(0)}));
  CHECK(rid.raw_word.empty());

  auto gl3 = make(Family::GL, 3);
  auto r3 = dominant_representative(gl3, RatCochar{Rat(0), Rat(1), Rat(0)});
  CHECK(ratvec_eq(r3.vplus, RatCochar{Rat(1), Rat(0), Rat(0)}));

  // Type A oracle: the dominant representative is the coordinates sorted
  // in descending order.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-6, 6);
  for (int trial = 0; trial < 500; ++trial) {
    RatCochar v(4);
    for (auto &x : v) x = Rat(num(rng), 2);
    auto rep = dominant_representative(make(Family::GL, 4), v);
    RatCochar sorted = v;
    std::sort(sorted.begin(), sorted.end(),
              [](const Rat &a, const Rat &b) { return b < a; });
    CHECK(ratvec_eq(rep.vplus, sorted));
    // Idempotence.
    auto again = dominant_representative(make(Family::GL, 4), rep.vplus);
    CHECK(ratvec_eq(again.vplus, rep.vplus));
    CHECK(again.raw_word.empty());
  }
}

TEST_CASE("twisted sigma on GL_3") {
  auto d = make(Family::GL, 3, SigmaKind::dual);
  CHECK(d.sigma_order == 2);
  CHECK(sigma_apply(d, Cochar{1, 0, 0}) == Cochar{0, 0, -1});
  Cochar v{5, -2, 7};
  CHECK(sigma_apply(d, v) == Cochar{-7, 2, -5});
  CHECK(sigma_apply(d, sigma_apply(d, v)) == v);
  CHECK(sigma_apply_inv(d, sigma_apply(d, v)) == v);

  // Contragredient: <sigma_char(chi), sigma(v)> = <chi, v>.
  IntVec chi{3, 1, -4};
  CHECK(dot(sigma_apply_char(d, chi), sigma_apply(d, v)) == dot(chi, v));

  CHECK_THROWS(make(Family::Sp, 4, SigmaKind::dual));
  CHECK_THROWS(make(Family::GSp, 4, SigmaKind::dual));
}

TEST_CASE("invariants across all families") {
  std::vector<RootDatum> data;
  data.push_back(make(Family::GL, 2));
  data.push_back(make(Family::GL, 4, SigmaKind::dual));
  data.push_back(make(Family::SL, 3, SigmaKind::dual));
  data.push_back(make(Family::Sp, 6));
  data.push_back(make(Family::GSp, 4));

  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<long long> coef(-9, 9);

  for (const auto &d : data) {
    for (size_t k = 0; k < d.roots.size(); ++k)
      CHECK(dot(d.roots[k], d.coroots[k]) == 2);

    // sigma preserves dominance.
    for (int trial = 0; trial < 1000; ++trial) {
      Cochar v(d.dim);
      for (auto &x : v) x = coef(rng);
      CHECK(is_dominant(d, v) == is_dominant(d, sigma_apply(d, v)));
    }

    // The coroot lattice is sigma-stable.
    for (int i = 0; i < d.ss_rank; ++i) {
      CHECK(in_row_lattice(d.coroot_lattice_basis, d.simple_coroot(i)));
      CHECK(in_row_lattice(d.coroot_lattice_basis,
                           sigma_apply(d, d.simple_coroot(i))));
    }

    // Reflection matrices are involutions fixing the pairing structure.
    for (int i = 0; i < d.ss_rank; ++i) {
      IntMat s = reflection_matrix(d, d.simple_root(i), d.simple_coroot(i));
      CHECK(mat_mul(s, s) == identity_mat(d.dim));
      CHECK(mat_apply(s, d.simple_coroot(i)) ==
            vec_sub(IntVec(d.dim, 0), d.simple_coroot(i)));
    }
  }
}

TEST_CASE("cocharacter lattice membership and coordinates") {
  auto sl3 = make(Family::SL, 3);
  CHECK(in_cochar_lattice(sl3, Cochar{1, 0, -1}));
  CHECK(!in_cochar_lattice(sl3, Cochar{1, 0, 0}));
  auto c = cochar_in_basis(sl3, Cochar{1, 0, -1});
  CHECK(c == IntVec{1, 1}); // (1,-1,0) + (0,1,-1)
  CHECK_THROWS(cochar_in_basis(sl3, Cochar{1, 0, 0}));

  auto gl3 = make(Family::GL, 3);
  CHECK(in_cochar_lattice(gl3, Cochar{4, -1, 3}));
  CHECK(cochar_in_basis(gl3, Cochar{4, -1, 3}) == IntVec{4, -1, 3});
}

TEST_CASE("spec file parsing") {
  auto sf = parse_spec_file("# a comment\nfamily=GL\nrank=3\nsigma=identity\nmu=1,0,0\n");
  CHECK(sf.group.family == Family::GL);
  CHECK(sf.group.rank == 3);
  CHECK(sf.group.sigma == SigmaKind::identity);
  REQUIRE(sf.mu.has_value());
  CHECK(*sf.mu == Cochar{1, 0, 0});

  auto tw = parse_spec_file("family=GL\nrank=3\nsigma=perm:2,1\n");
  CHECK(tw.group.sigma == SigmaKind::dual);
  auto tw_id = parse_spec_file("family=GL\nrank=3\nsigma=perm:1,2\n");
  CHECK(tw_id.group.sigma == SigmaKind::identity);
  auto dual2 = parse_spec_file("family=GL\nrank=2\nsigma=dual\n");
  CHECK(dual2.group.sigma == SigmaKind::dual);

  auto sp = parse_spec_file("family=Sp\nrank=4\nmu=1,1\n");
  CHECK(sp.group.family == Family::Sp);
  CHECK(*sp.mu == Cochar{1, 1});

  CHECK_THROWS(parse_spec_file("family=E8\nrank=8\n"));
  CHECK_THROWS(parse_spec_file("rank=3\n"));                      // missing family
  CHECK_THROWS(parse_spec_file("family=GL\nrank=3\ncolor=red\n")); // unknown key
  CHECK_THROWS(parse_spec_file("family=GL\nrank=3\nsigma=perm:2,1,3\n")); // wrong length
  CHECK_THROWS(parse_spec_file("family=GL\nrank=3\nmu=1,0\n"));   // mu length
  CHECK_THROWS(parse_spec_file("family=SL\nrank=3\nmu=1,0,0\n")); // not sum-zero
  CHECK_THROWS(parse_spec_file("family=Sp\nrank=4\nsigma=dual\n"));
  CHECK_THROWS(parse_spec_file("family=Sp\nrank=4\nsigma=perm:2,1\n")); // breaks Cartan
}
