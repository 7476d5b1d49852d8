#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "strat/bgmu.hpp"

using namespace strat;

namespace {

RootDatum make(Family f, int rank, SigmaKind s = SigmaKind::identity) {
  GroupSpec spec;
  spec.family = f;
  spec.rank = rank;
  spec.sigma = s;
  return build_root_datum(spec);
}

RatCochar rv(std::initializer_list<Rat> xs) { return RatCochar(xs); }

// Independent route for the dominance order: nu' <= nu iff nu - nu' is a
// nonnegative rational combination of the simple coroots.  Solves for the
// coefficients directly (simple coroots are linearly independent, so the
// combination is unique when it exists at all).
enum class CoroOracle { below, not_below, incomparable };
CoroOracle coroot_combination_oracle(const RootDatum &d, const RatCochar &nu_prime,
                                     const RatCochar &nu) {
  RatMat a(d.dim, RatVec(d.ss_rank, Rat(0)));
  for (int i = 0; i < d.ss_rank; ++i)
    for (int r = 0; r < d.dim; ++r) a[r][i] = Rat(d.simple_coroot(i)[r]);
  RatVec delta = vec_sub(nu, nu_prime);
  auto x = rat_solve(a, delta);
  if (!x) return CoroOracle::incomparable;
  for (const Rat &c : *x)
    if (c.sign() < 0) return CoroOracle::not_below;
  return CoroOracle::below;
}

} // namespace

TEST_CASE("newton_leq: frozen comparisons") {
  RootDatum gl3 = make(Family::GL, 3);
  RatCochar basic = rv({Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  RatCochar mid = rv({Rat(1, 2), Rat(1, 2), Rat(0)});
  RatCochar top = rv({Rat(1), Rat(0), Rat(0)});
  CHECK(newton_leq(gl3, basic, mid));
  CHECK(newton_leq(gl3, mid, top));
  CHECK(newton_leq(gl3, basic, top));
  CHECK_FALSE(newton_leq(gl3, top, basic));
  CHECK_FALSE(newton_leq(gl3, mid, basic));
  CHECK(newton_leq(gl3, mid, mid)); // reflexive

  // GL_4 antichain: neither direction.
  RootDatum gl4 = make(Family::GL, 4);
  RatCochar a = rv({Rat(1), Rat(1), Rat(0), Rat(0)});
  RatCochar b = rv({Rat(3, 2), Rat(1, 6), Rat(1, 6), Rat(1, 6)});
  CHECK_FALSE(newton_leq(gl4, a, b));
  CHECK_FALSE(newton_leq(gl4, b, a));

  // Distinct central components are not comparable at all.
  RootDatum gl2 = make(Family::GL, 2);
  CHECK_THROWS_AS(newton_leq(gl2, rv({Rat(0), Rat(0)}), rv({Rat(1), Rat(0)})),
                  std::invalid_argument);
  // Non-dominant input is rejected.
  CHECK_THROWS_AS(newton_leq(gl2, rv({Rat(0), Rat(1)}), rv({Rat(1), Rat(0)})),
                  std::invalid_argument);
  // Non-sigma-invariant input is rejected in the twisted group.
  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  CHECK_THROWS_AS(
      newton_leq(tgl2, rv({Rat(1), Rat(0)}), rv({Rat(1), Rat(0)})),
      std::invalid_argument);
  CHECK(newton_leq(tgl2, rv({Rat(0), Rat(0)}), rv({Rat(1, 2), Rat(-1, 2)})));
  CHECK_FALSE(newton_leq(tgl2, rv({Rat(1, 2), Rat(-1, 2)}), rv({Rat(0), Rat(0)})));
}

TEST_CASE("newton_leq: agrees with the coroot-combination route") {
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<long long> coord(-3, 3);
  for (Family fam : {Family::GL, Family::Sp}) {
    RootDatum d = make(fam, fam == Family::Sp ? 6 : 3);
    WeylGroup w(d);
    int checked = 0, incomparable = 0;
    for (int trial = 0; trial < 400; ++trial) {
      RatCochar u(d.dim), v(d.dim);
      for (int c = 0; c < d.dim; ++c) {
        u[c] = Rat(coord(rng), 2);
        v[c] = Rat(coord(rng), 2);
      }
      if (trial % 2 == 0) {
        // Force matching coordinate sums so the comparable branch is hit.
        Rat su(0), sv(0);
        for (int c = 0; c + 1 < d.dim; ++c) {
          su += u[c];
          sv += v[c];
        }
        v[d.dim - 1] = su + u[d.dim - 1] - sv;
      }
      RatCochar du = dominant_representative(d, u).vplus;
      RatCochar dv = dominant_representative(d, v).vplus;
      CoroOracle expect = coroot_combination_oracle(d, du, dv);
      if (expect == CoroOracle::incomparable) {
        CHECK_THROWS_AS(newton_leq(d, du, dv), std::invalid_argument);
        ++incomparable;
      } else {
        CHECK(newton_leq(d, du, dv) == (expect == CoroOracle::below));
        ++checked;
      }
    }
    CHECK(checked > 50); // the sample must actually exercise both routes
    if (fam == Family::GL) CHECK(incomparable > 50);
    if (fam == Family::Sp) CHECK(incomparable == 0); // semisimple: one component
  }
}

TEST_CASE("polygon oracle: frozen slope sets") {
  RootDatum gl2 = make(Family::GL, 2);
  auto p2 = polygon_oracle(gl2, {1, 0});
  REQUIRE(p2.size() == 2);
  CHECK(ratvec_eq(p2[0], rv({Rat(1, 2), Rat(1, 2)})));
  CHECK(ratvec_eq(p2[1], rv({Rat(1), Rat(0)})));

  RootDatum gl3 = make(Family::GL, 3);
  auto p3 = polygon_oracle(gl3, {1, 0, 0});
  REQUIRE(p3.size() == 3);
  CHECK(ratvec_eq(p3[0], rv({Rat(1, 3), Rat(1, 3), Rat(1, 3)})));
  CHECK(ratvec_eq(p3[1], rv({Rat(1, 2), Rat(1, 2), Rat(0)})));
  CHECK(ratvec_eq(p3[2], rv({Rat(1), Rat(0), Rat(0)})));

  auto p33 = polygon_oracle(gl3, {1, 1, 0});
  REQUIRE(p33.size() == 3);
  CHECK(ratvec_eq(p33[0], rv({Rat(2, 3), Rat(2, 3), Rat(2, 3)})));
  CHECK(ratvec_eq(p33[1], rv({Rat(1), Rat(1, 2), Rat(1, 2)})));
  CHECK(ratvec_eq(p33[2], rv({Rat(1), Rat(1), Rat(0)})));

  RootDatum sl2 = make(Family::SL, 2);
  auto q2 = polygon_oracle(sl2, {1, -1});
  REQUIRE(q2.size() == 2);
  CHECK(ratvec_eq(q2[0], rv({Rat(0), Rat(0)})));
  CHECK(ratvec_eq(q2[1], rv({Rat(1), Rat(-1)})));

  RootDatum sl3 = make(Family::SL, 3);
  auto q3 = polygon_oracle(sl3, {1, 0, -1});
  REQUIRE(q3.size() == 4);
  CHECK(ratvec_eq(q3[0], rv({Rat(0), Rat(0), Rat(0)})));
  CHECK(ratvec_eq(q3[1], rv({Rat(1, 2), Rat(1, 2), Rat(-1)})));
  CHECK(ratvec_eq(q3[2], rv({Rat(1), Rat(-1, 2), Rat(-1, 2)})));
  CHECK(ratvec_eq(q3[3], rv({Rat(1), Rat(0), Rat(-1)})));

  // Central cocharacter: only the straight path.
  auto pc = polygon_oracle(gl2, {2, 2});
  REQUIRE(pc.size() == 1);
  CHECK(ratvec_eq(pc[0], rv({Rat(2), Rat(2)})));

  CHECK_THROWS_AS(polygon_oracle(make(Family::Sp, 4), {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(polygon_oracle(make(Family::GL, 2, SigmaKind::dual), {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(polygon_oracle(gl2, {0, 1}), std::invalid_argument);
}

TEST_CASE("polygon_leq: prefix-sum order") {
  CHECK(polygon_leq(rv({Rat(1, 2), Rat(1, 2)}), rv({Rat(1), Rat(0)})));
  CHECK_FALSE(polygon_leq(rv({Rat(1), Rat(0)}), rv({Rat(1, 2), Rat(1, 2)})));
  CHECK(polygon_leq(rv({Rat(1), Rat(0)}), rv({Rat(1), Rat(0)})));
  // Different totals are never comparable.
  CHECK_FALSE(polygon_leq(rv({Rat(1), Rat(0)}), rv({Rat(1), Rat(1)})));
  CHECK_THROWS_AS(polygon_leq(rv({Rat(1)}), rv({Rat(1), Rat(0)})),
                  std::invalid_argument);

  // Against newton_leq on untwisted GL_4 dominant pairs: must coincide.
  RootDatum gl4 = make(Family::GL, 4);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> coord(-2, 2);
  int agree = 0;
  for (int trial = 0; trial < 300; ++trial) {
    RatCochar u(4), v(4);
    for (int c = 0; c < 4; ++c) {
      u[c] = Rat(coord(rng), 3);
      v[c] = Rat(coord(rng), 3);
    }
    RatCochar du = dominant_representative(gl4, u).vplus;
    RatCochar dv = dominant_representative(gl4, v).vplus;
    Rat su(0), sv(0);
    for (int c = 0; c < 4; ++c) {
      su += du[c];
      sv += dv[c];
    }
    if (su != sv) continue; // newton_leq would reject the comparison
    CHECK(newton_leq(gl4, du, dv) == polygon_leq(du, dv));
    ++agree;
  }
  CHECK(agree > 30);
}

TEST_CASE("enumerate_bgmu: frozen posets") {
  RootDatum gl2 = make(Family::GL, 2);
  WeylGroup w2(gl2);
  BGmuPoset p = enumerate_bgmu(w2, {1, 0});
  REQUIRE(p.elements.size() == 2);
  CHECK(ratvec_eq(p.elements[0].nu, rv({Rat(1, 2), Rat(1, 2)})));
  CHECK(ratvec_eq(p.elements[1].nu, rv({Rat(1), Rat(0)})));
  CHECK(p.basic_index == 0);
  CHECK(p.max_index == 1);
  CHECK(p.leq[0][1]);
  CHECK_FALSE(p.leq[1][0]);
  Pi1Data pi1 = Pi1Data::for_group(gl2);
  for (const auto &c : p.elements) CHECK(c.kappa == pi1.canonical_form({1, 0}));

  RootDatum sp4 = make(Family::Sp, 4);
  WeylGroup wsp(sp4);
  BGmuPoset ps = enumerate_bgmu(wsp, {1, 0});
  REQUIRE(ps.elements.size() == 3);
  CHECK(ratvec_eq(ps.elements[0].nu, rv({Rat(0), Rat(0)})));
  CHECK(ratvec_eq(ps.elements[1].nu, rv({Rat(1, 2), Rat(1, 2)})));
  CHECK(ratvec_eq(ps.elements[2].nu, rv({Rat(1), Rat(0)})));
  CHECK(ps.basic_index == 0);
  CHECK(ps.max_index == 2);
  // Totally ordered chain.
  CHECK(ps.leq[0][1]);
  CHECK(ps.leq[1][2]);
  CHECK_FALSE(ps.leq[2][1]);

  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);
  BGmuPoset p3 = enumerate_bgmu(w3, {1, 1, 0});
  REQUIRE(p3.elements.size() == 3);
  CHECK(ratvec_eq(p3.elements[0].nu, rv({Rat(2, 3), Rat(2, 3), Rat(2, 3)})));
  CHECK(ratvec_eq(p3.elements[1].nu, rv({Rat(1), Rat(1, 2), Rat(1, 2)})));
  CHECK(ratvec_eq(p3.elements[2].nu, rv({Rat(1), Rat(1), Rat(0)})));

  RootDatum sl3 = make(Family::SL, 3);
  WeylGroup wsl(sl3);
  BGmuPoset q = enumerate_bgmu(wsl, {1, 0, -1});
  REQUIRE(q.elements.size() == 4);
  CHECK(ratvec_eq(q.elements[0].nu, rv({Rat(0), Rat(0), Rat(0)})));
  CHECK(ratvec_eq(q.elements[3].nu, rv({Rat(1), Rat(0), Rat(-1)})));
  CHECK(q.basic_index == 0);
  CHECK(q.max_index == 3);
  // The two middle classes are an antichain.
  CHECK_FALSE(q.leq[1][2]);
  CHECK_FALSE(q.leq[2][1]);
}

TEST_CASE("enumerate_bgmu: twisted GL_2") {
  RootDatum d = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup w(d);
  BGmuPoset p = enumerate_bgmu(w, {1, 0});
  REQUIRE(p.elements.size() == 2);
  CHECK(ratvec_eq(p.elements[0].nu, rv({Rat(0), Rat(0)})));
  CHECK(ratvec_eq(p.elements[1].nu, rv({Rat(1, 2), Rat(-1, 2)})));
  CHECK(p.basic_index == 0);
  CHECK(p.max_index == 1);
  CHECK(ratvec_eq(p.elements[1].nu, mu_bar(d, {1, 0})));
  // kappa is the nonzero class of Z/2 for every element.
  Pi1Data pi1 = Pi1Data::for_group(d);
  CHECK(pi1.group_str() == "Z/2");
  for (const auto &c : p.elements) {
    CHECK(c.kappa == pi1.canonical_form({1, 0}));
    // ... and that class is nonzero: (2,0) lies in the relation lattice.
    CHECK(c.kappa != pi1.canonical_form({2, 0}));
  }
}

TEST_CASE("enumerate_bgmu: singleton exactly for central mu") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);
  CHECK(enumerate_bgmu(w3, {1, 1, 1}).elements.size() == 1);
  CHECK(enumerate_bgmu(w3, {2, 1, 1}).elements.size() > 1);
  RootDatum gsp4 = make(Family::GSp, 4);
  WeylGroup wgsp(gsp4);
  CHECK(enumerate_bgmu(wgsp, {1, 1, 2}).elements.size() == 1);
  CHECK(enumerate_bgmu(wgsp, {1, 1, 1}).elements.size() > 1);

  RootDatum gl2 = make(Family::GL, 2);
  WeylGroup w2(gl2);
  CHECK_THROWS_AS(enumerate_bgmu(w2, {0, 1}), std::invalid_argument);
  RootDatum sl2 = make(Family::SL, 2);
  WeylGroup wsl2(sl2);
  CHECK_THROWS_AS(enumerate_bgmu(wsl2, {1, 0}), std::invalid_argument);
}

TEST_CASE("enumerate_bgmu: structural laws across a battery") {
  struct Entry {
    Family f;
    int rank;
    SigmaKind s;
    Cochar mu;
  };
  std::vector<Entry> battery = {
      {Family::GL, 4, SigmaKind::identity, {1, 1, 0, 0}},
      {Family::GL, 4, SigmaKind::identity, {2, 1, 1, 0}},
      {Family::GL, 3, SigmaKind::dual, {1, 0, 0}},
      {Family::GL, 4, SigmaKind::dual, {1, 0, 0, 0}},
      {Family::SL, 4, SigmaKind::identity, {1, 1, -1, -1}},
      {Family::SL, 3, SigmaKind::dual, {1, 0, -1}},
      {Family::Sp, 6, SigmaKind::identity, {1, 1, 0}},
      {Family::GSp, 4, SigmaKind::identity, {1, 1, 1}},
      {Family::GSp, 6, SigmaKind::identity, {1, 1, 1, 1}},
  };
  for (const auto &e : battery) {
    CAPTURE(family_name(e.f));
    CAPTURE(e.rank);
    RootDatum d = make(e.f, e.rank, e.s);
    WeylGroup w(d);
    BGmuPoset p = enumerate_bgmu(w, e.mu);
    Pi1Data pi1 = Pi1Data::for_group(d);
    KottwitzPoint mu_nat = pi1.canonical_form(e.mu);
    RatCochar mubar = mu_bar(d, e.mu);
    size_t n = p.elements.size();
    REQUIRE(n >= 1);
    REQUIRE(p.max_index >= 0);
    REQUIRE(p.basic_index >= 0);
    CHECK(ratvec_eq(p.elements[p.max_index].nu, mubar));
    for (size_t i = 0; i < n; ++i) {
      const auto &c = p.elements[i];
      CHECK(c.kappa == mu_nat);
      CHECK(is_dominant(d, c.nu));
      CHECK(ratvec_eq(sigma_apply(d, c.nu), c.nu));
      CHECK(p.leq[i][i]);
      CHECK(p.leq[i][p.max_index]);
      CHECK(p.leq[p.basic_index][i]);
      if ((int)i > 0) CHECK(ratvec_lex_less(p.elements[i - 1].nu, c.nu));
      for (size_t j = 0; j < n; ++j) {
        if (i != j && p.leq[i][j]) CHECK_FALSE(p.leq[j][i]); // antisymmetry
        for (size_t k = 0; k < n; ++k)                       // transitivity
          if (p.leq[i][j] && p.leq[j][k]) CHECK(p.leq[i][k]);
      }
    }
    // The basic Newton point is central: orthogonal to every simple root.
    for (int s = 0; s < d.ss_rank; ++s)
      CHECK(pairing(d, d.simple_root(s), p.elements[p.basic_index].nu).is_zero());
  }
}

TEST_CASE("b_max and basic_element accessors") {
  RootDatum gl2 = make(Family::GL, 2);
  WeylGroup w(gl2);
  CHECK(ratvec_eq(b_max(w, {1, 0}).nu, rv({Rat(1), Rat(0)})));
  CHECK(ratvec_eq(basic_element(w, {1, 0}).nu, rv({Rat(1, 2), Rat(1, 2)})));

  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup tw(tgl2);
  CHECK(ratvec_eq(b_max(tw, {1, 0}).nu, mu_bar(tgl2, {1, 0})));
  CHECK(ratvec_eq(basic_element(tw, {1, 0}).nu, rv({Rat(0), Rat(0)})));
}

TEST_CASE("levi_centralizer: fixtures") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);

  // Regular center: the torus itself.
  LeviDatum t = levi_centralizer(w3, rv({Rat(2), Rat(1), Rat(0)}));
  CHECK(t.pos_roots.empty());
  CHECK(t.simple_roots.empty());
  CHECK(t.wm_elements == std::vector<int>{0});
  CHECK_FALSE(t.is_full());

  // GL_2 x GL_1 block: exactly e1 - e2 vanishes.
  LeviDatum m = levi_centralizer(w3, rv({Rat(1), Rat(1), Rat(0)}));
  REQUIRE(m.pos_roots.size() == 1);
  CHECK(gl3.pos_root(m.pos_roots[0]) == IntVec{1, -1, 0});
  CHECK(m.simple_roots == m.pos_roots);
  CHECK(m.wm_elements.size() == 2);

  // Central vector: the whole group, indecomposables are the simple roots.
  LeviDatum g = levi_centralizer(w3, rv({Rat(1, 3), Rat(1, 3), Rat(1, 3)}));
  CHECK(g.is_full());
  CHECK(g.wm_elements.size() == 6);
  REQUIRE(g.simple_roots.size() == 2);
  CHECK(gl3.pos_root(g.simple_roots[0]) == IntVec{1, -1, 0});
  CHECK(gl3.pos_root(g.simple_roots[1]) == IntVec{0, 1, -1});

  // Sp_4 with center (1,0): only the long root 2e2 survives.
  RootDatum sp4 = make(Family::Sp, 4);
  WeylGroup wsp(sp4);
  LeviDatum msp = levi_centralizer(wsp, rv({Rat(1), Rat(0)}));
  REQUIRE(msp.pos_roots.size() == 1);
  CHECK(sp4.pos_root(msp.pos_roots[0]) == IntVec{0, 2});
  CHECK(msp.wm_elements.size() == 2);

  // Twisted GL_2: a non-sigma-invariant center is rejected.
  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup tw(tgl2);
  CHECK_THROWS_AS(levi_centralizer(tw, rv({Rat(1), Rat(0)})),
                  std::invalid_argument);
  LeviDatum tt = levi_centralizer(tw, rv({Rat(1, 2), Rat(-1, 2)}));
  CHECK(tt.pos_roots.empty());
  CHECK(tt.wm_elements == std::vector<int>{0});
}

TEST_CASE("levi_pi1: block Levi of GL_3 has pi1 = Z + Z") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);
  LeviDatum m = levi_centralizer(w3, rv({Rat(1), Rat(1), Rat(0)}));
  Pi1Data pm = levi_pi1(m);
  CHECK(pm.group_str() == "Z + Z");
  // kappa_M separates the blocks but not positions inside a block.
  CHECK(pm.canonical_form({1, 0, 0}) == pm.canonical_form({0, 1, 0}));
  CHECK(pm.canonical_form({1, 0, 0}) != pm.canonical_form({0, 0, 1}));
  // For M = G this is just pi_1(G).
  LeviDatum g = levi_centralizer(w3, rv({Rat(0), Rat(0), Rat(0)}));
  CHECK(levi_pi1(g).group_str() == "Z");
}

TEST_CASE("mu_central_in_levi: witnesses") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);
  auto wit = mu_central_in_levi(w3, {1, 1, 0});
  REQUIRE(wit.size() == 1);
  CHECK(gl3.pos_root(wit[0].pos_root_index) == IntVec{1, -1, 0});
  CHECK(wit[0].summands == std::vector<long long>{0});

  // Regular mu_bar: no roots in the Levi, nothing to witness.
  CHECK(mu_central_in_levi(w3, {2, 1, 0}).empty());
  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup tw(tgl2);
  CHECK(mu_central_in_levi(tw, {1, 0}).empty());

  // Twisted GL_4, mu = (1,0,0,0): mu_bar = (1/2,0,0,-1/2) and the middle
  // root e2 - e3 lies in M; both sigma-orbit summands vanish.
  RootDatum tgl4 = make(Family::GL, 4, SigmaKind::dual);
  WeylGroup tw4(tgl4);
  auto wit4 = mu_central_in_levi(tw4, {1, 0, 0, 0});
  REQUIRE(wit4.size() == 1);
  CHECK(tgl4.pos_root(wit4[0].pos_root_index) == IntVec{0, 1, -1, 0});
  CHECK(wit4[0].summands == std::vector<long long>{0, 0});

  // Central mu: every root of G is witnessed.
  auto witc = mu_central_in_levi(w3, {1, 1, 1});
  CHECK(witc.size() == 3);

  CHECK_THROWS_AS(mu_central_in_levi(w3, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("V_M membership and projection") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);
  LeviDatum m = levi_centralizer(w3, rv({Rat(1), Rat(1), Rat(0)}));

  CHECK(in_VM(m, rv({Rat(1), Rat(1), Rat(0)})));
  CHECK(in_VM(m, rv({Rat(1, 2), Rat(1, 2), Rat(5)})));
  CHECK_FALSE(in_VM(m, rv({Rat(1), Rat(0), Rat(0)})));

  CHECK(in_VM_plus(m, rv({Rat(1), Rat(1), Rat(0)})));
  CHECK_FALSE(in_VM_plus(m, rv({Rat(0), Rat(0), Rat(1)})));
  CHECK_FALSE(in_VM_plus(m, rv({Rat(1), Rat(1), Rat(1)}))); // boundary
  CHECK_THROWS_AS(in_VM_plus(m, rv({Rat(1), Rat(0), Rat(0)})),
                  std::invalid_argument);

  // Projection averages the first block.
  RatCochar pr = project_to_VM(m, rv({Rat(1), Rat(0), Rat(0)}));
  CHECK(ratvec_eq(pr, rv({Rat(1, 2), Rat(1, 2), Rat(0)})));
  // Idempotent, and the identity on V_M.
  CHECK(ratvec_eq(project_to_VM(m, pr), pr));

  // M = G: projection to the sigma-fixed central line.
  RootDatum gl2 = make(Family::GL, 2);
  WeylGroup w2(gl2);
  LeviDatum g = levi_centralizer(w2, rv({Rat(0), Rat(0)}));
  CHECK(ratvec_eq(project_to_VM(g, rv({Rat(1), Rat(0)})),
                  rv({Rat(1, 2), Rat(1, 2)})));
  // M = T: sigma-average only (here sigma = id, so the identity map).
  LeviDatum t = levi_centralizer(w2, rv({Rat(1), Rat(0)}));
  CHECK(ratvec_eq(project_to_VM(t, rv({Rat(1), Rat(0)})), rv({Rat(1), Rat(0)})));
  // V_M^+ for M = T is the G-dominant-regular cone.
  CHECK(in_VM_plus(t, rv({Rat(1), Rat(0)})));
  CHECK_FALSE(in_VM_plus(t, rv({Rat(1, 2), Rat(1, 2)})));
  // M = G leaves no root outside: the condition is vacuous.
  CHECK(in_VM_plus(g, rv({Rat(1, 2), Rat(1, 2)})));

  // Twisted GL_2, M = T: sigma-average is the projection.
  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup tw(tgl2);
  LeviDatum tt = levi_centralizer(tw, rv({Rat(1, 2), Rat(-1, 2)}));
  CHECK(ratvec_eq(project_to_VM(tt, rv({Rat(1), Rat(0)})),
                  rv({Rat(1, 2), Rat(-1, 2)})));
}

TEST_CASE("M-dominance and M-Newton points") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);
  LeviDatum m = levi_centralizer(w3, rv({Rat(1), Rat(1), Rat(0)}));

  // Only the first block is sorted; the rest of the vector stays put.
  RatCochar rep = m_dominant_representative(m, rv({Rat(0), Rat(1), Rat(2)}));
  CHECK(ratvec_eq(rep, rv({Rat(1), Rat(0), Rat(2)})));
  CHECK_FALSE(is_dominant(gl3, rep)); // M-dominant, not G-dominant
  CHECK(ratvec_eq(m_dominant_representative(m, rep), rep));

  // M-Newton for the identity finite part is the M-dominant translation.
  int s1 = w3.simple_reflection(0);
  RatCochar nm = m_newton_point(m, {{0, 1, 2}, w3.identity()});
  CHECK(ratvec_eq(nm, rv({Rat(1), Rat(0), Rat(2)})));
  // Averaging over the block reflection.
  RatCochar nm2 = m_newton_point(m, {{0, 1, 2}, s1});
  CHECK(ratvec_eq(nm2, rv({Rat(1, 2), Rat(1, 2), Rat(2)})));
  // The finite part must lie in W_M.
  int s2 = w3.simple_reflection(1);
  CHECK_THROWS_AS(m_newton_point(m, {{0, 1, 2}, s2}), std::invalid_argument);

  // For M = G this is the plain Newton point.
  LeviDatum g = levi_centralizer(w3, rv({Rat(0), Rat(0), Rat(0)}));
  for (int w = 0; w < w3.size(); ++w) {
    AffineElement b{{2, 0, 1}, w};
    CHECK(ratvec_eq(m_newton_point(g, b), newton_point(w3, b)));
  }

  // Twisted GL_2, M = T: averaging along the sigma-orbit.
  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup tw(tgl2);
  LeviDatum tt = levi_centralizer(tw, rv({Rat(1, 2), Rat(-1, 2)}));
  CHECK(ratvec_eq(m_newton_point(tt, {{1, 0}, tw.identity()}),
                  rv({Rat(1, 2), Rat(-1, 2)})));
}

TEST_CASE("hn_applicable: GL_2 torus fixtures") {
  RootDatum gl2 = make(Family::GL, 2);
  WeylGroup w2(gl2);
  LeviDatum t = levi_centralizer(w2, rv({Rat(1), Rat(0)}));

  HNReport ok = hn_applicable(t, {1, 0}, {{1, 0}, w2.identity()});
  CHECK(ok.applicable);
  CHECK(ok.kappa_matches);
  CHECK(ok.slope_in_vm_plus);
  CHECK(ok.newton_g_dominant);
  CHECK(ratvec_eq(ok.vm_image, rv({Rat(1), Rat(0)})));
  CHECK(ratvec_eq(ok.m_newton, rv({Rat(1), Rat(0)})));

  // The W-conjugate translation fails every test.
  HNReport bad = hn_applicable(t, {1, 0}, {{0, 1}, w2.identity()});
  CHECK_FALSE(bad.applicable);
  CHECK_FALSE(bad.kappa_matches);
  CHECK_FALSE(bad.slope_in_vm_plus);
  CHECK_FALSE(bad.newton_g_dominant);
  CHECK(ratvec_eq(bad.m_newton, rv({Rat(0), Rat(1)})));

  // Preconditions.
  CHECK_THROWS_AS(hn_applicable(t, {0, 1}, {{1, 0}, w2.identity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hn_applicable(t, {1, 0}, {{1, 0}, w2.simple_reflection(0)}),
                  std::invalid_argument);
}

TEST_CASE("hn_applicable: GL_3 fixtures") {
  RootDatum gl3 = make(Family::GL, 3);
  WeylGroup w3(gl3);

  // Regular case, M = T.
  LeviDatum t = levi_centralizer(w3, rv({Rat(2), Rat(1), Rat(0)}));
  CHECK(hn_applicable(t, {2, 1, 0}, {{2, 1, 0}, w3.identity()}).applicable);
  HNReport bad = hn_applicable(t, {2, 1, 0}, {{1, 2, 0}, w3.identity()});
  CHECK_FALSE(bad.kappa_matches);
  CHECK_FALSE(bad.slope_in_vm_plus);
  CHECK_FALSE(bad.newton_g_dominant);
  CHECK_FALSE(bad.applicable);

  // Block Levi, b0 = t^mu with mu central in M: applicable for every finite
  // part in W_M, and condition (c) holds automatically.
  LeviDatum m = levi_centralizer(w3, rv({Rat(1), Rat(1), Rat(0)}));
  for (int w : m.wm_elements) {
    HNReport r = hn_applicable(m, {1, 1, 0}, {{1, 1, 0}, w});
    CHECK(r.applicable);
    CHECK(r.newton_g_dominant);
    CHECK(ratvec_eq(r.m_newton, rv({Rat(1), Rat(1), Rat(0)})));
  }

  // Same Levi, a translation distributing the weight across the blocks
  // differently: the per-block sums (hence kappa_M) disagree.
  HNReport wrong = hn_applicable(m, {1, 1, 0}, {{1, 0, 1}, w3.identity()});
  CHECK_FALSE(wrong.kappa_matches);
  CHECK_FALSE(wrong.applicable);
}

TEST_CASE("hn_applicable: twisted GL_2 and the M = G degenerate case") {
  RootDatum tgl2 = make(Family::GL, 2, SigmaKind::dual);
  WeylGroup tw(tgl2);
  LeviDatum tt = levi_centralizer(tw, rv({Rat(1, 2), Rat(-1, 2)}));
  HNReport r = hn_applicable(tt, {1, 0}, {{1, 0}, tw.identity()});
  CHECK(r.applicable);
  CHECK(r.kappa_matches);
  CHECK(r.slope_in_vm_plus);
  CHECK(r.newton_g_dominant);
  CHECK(ratvec_eq(r.vm_image, rv({Rat(1, 2), Rat(-1, 2)})));
  CHECK(ratvec_eq(r.m_newton, rv({Rat(1, 2), Rat(-1, 2)})));

  // M = G: only the kappa comparison can discriminate, and it cannot fail
  // for a translation in the W-orbit of lambda.
  RootDatum gl2 = make(Family::GL, 2);
  WeylGroup w2(gl2);
  LeviDatum g = levi_centralizer(w2, rv({Rat(0), Rat(0)}));
  HNReport rg = hn_applicable(g, {1, 0}, {{0, 1}, w2.simple_reflection(0)});
  CHECK(rg.applicable);
  CHECK(rg.slope_in_vm_plus);
  HNReport rg2 = hn_applicable(g, {1, 0}, {{1, 1}, w2.identity()});
  CHECK_FALSE(rg2.kappa_matches);
  CHECK_FALSE(rg2.applicable);
}
