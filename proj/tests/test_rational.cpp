#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strat/rational.hpp"

using strat::Rat;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, 4) == Rat(1, -2));
  CHECK(Rat(3, -6).den() == 2);
  CHECK(Rat(3, -6).num() == -1);
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(0, 7).den() == 1);
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("field operations are exact") {
  Rat a(1, 3), b(1, 6);
  CHECK(a + b == Rat(1, 2));
  CHECK(a - b == Rat(1, 6));
  CHECK(a * b == Rat(1, 18));
  CHECK(a / b == Rat(2));
  CHECK((a + b + Rat(1, 2)) == Rat(1));
  CHECK_THROWS_AS(a / Rat(0), std::domain_error);
}

TEST_CASE("ordering is the rational order") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(2, 4) <= Rat(1, 2));
  CHECK(Rat(7, 3) > Rat(2));
  CHECK(Rat(-5).sign() == -1);
}

TEST_CASE("overflow is detected, never wrapped") {
  Rat big(INT64_MAX, 1);
  CHECK_THROWS_AS(big * Rat(3), std::overflow_error);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  // Products that cancel back into range are fine.
  CHECK(Rat(INT64_MAX) * Rat(2, INT64_MAX) == Rat(2));
}

TEST_CASE("string rendering and floor") {
  CHECK(Rat(3, 2).str() == "3/2");
  CHECK(Rat(-4, 2).str() == "-2");
  CHECK(Rat(3, 2).floor() == 1);
  CHECK(Rat(-3, 2).floor() == -2);
  CHECK(strat::ratvec_str({Rat(1, 2), Rat(1, 2)}) == "(1/2,1/2)");
}

TEST_CASE("lexicographic vector order") {
  strat::RatVec a{Rat(1), Rat(0)}, b{Rat(1), Rat(1, 2)};
  CHECK(strat::ratvec_lex_less(a, b));
  CHECK(!strat::ratvec_lex_less(b, a));
  CHECK(!strat::ratvec_lex_less(a, a));
}
