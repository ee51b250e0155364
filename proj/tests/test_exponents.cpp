#include "nls/exponents.hpp"

#include <vector>

#include "doctest.h"

using nls::Rational;

TEST_SUITE("rational") {
  TEST_CASE("normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  }

  TEST_CASE("infinity ordering and reciprocal") {
    const Rational inf = Rational::infinity();
    CHECK(inf.is_infinite());
    CHECK(inf > Rational(1000000));
    CHECK(Rational(5, 2) < inf);
    CHECK(inf == Rational::infinity());
    CHECK(inf.reciprocal() == Rational(0));
    CHECK_THROWS_AS(inf + Rational(1), std::domain_error);
  }

  TEST_CASE("parse and print round-trip") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational::parse("-7/3") == Rational(-7, 3));
    CHECK(Rational::parse("inf").is_infinite());
    CHECK(Rational(8, 6).to_string() == "4/3");
    CHECK(Rational(4).to_string() == "4");
    CHECK(Rational::infinity().to_string() == "inf");
    CHECK_THROWS(Rational::parse("abc"));
  }
}

TEST_SUITE("exponents") {
  TEST_CASE("dual exponent") {
    CHECK(nls::dual_exponent(Rational(2)) == Rational(2));
    CHECK(nls::dual_exponent(Rational(1)).is_infinite());
    CHECK(nls::dual_exponent(Rational(4)) == Rational(4, 3));
    CHECK(nls::dual_exponent(Rational::infinity()) == Rational(1));
    CHECK_THROWS_AS(nls::dual_exponent(Rational(1, 2)), std::domain_error);
  }

  TEST_CASE("dual exponent is an involution on [1, inf]") {
    std::vector<Rational> lattice{Rational(1), Rational(6, 5), Rational(4, 3),
                                  Rational(3, 2), Rational(2), Rational(3),
                                  Rational(7, 2), Rational(10),
                                  Rational::infinity()};
    for (const auto& p : lattice)
      CHECK(nls::dual_exponent(nls::dual_exponent(p)) == p);
  }

  TEST_CASE("admissibility") {
    CHECK(nls::is_admissible(Rational::infinity(), Rational(2), 3));
    CHECK_FALSE(nls::is_admissible(Rational(2), Rational::infinity(), 2));
    CHECK(nls::is_admissible(Rational(4), Rational(3), 3));
    CHECK_FALSE(nls::is_admissible(Rational(4), Rational(3), 2));
    CHECK_FALSE(nls::is_admissible(Rational(3, 2), Rational(2), 1));
    CHECK_THROWS(nls::is_admissible(Rational(1, 2), Rational(2), 1));
  }

  TEST_CASE("cazenave-weissler pair examples") {
    const auto p33 = nls::cazenave_weissler_pair(3, Rational(3), Rational(1, 2));
    CHECK(p33.q == Rational(4));
    CHECK(p33.r == Rational(3));
    const auto p23 = nls::cazenave_weissler_pair(2, Rational(3), Rational(1, 2));
    CHECK(p23.q == Rational(8));
    CHECK(p23.r == Rational(8, 3));
    // s = n/2 boundary: for n = 1, min{1, n/2} = 1/2 excludes s = 1/2.
    CHECK_THROWS_AS(nls::cazenave_weissler_pair(1, Rational(2), Rational(1, 2)),
                    std::domain_error);
    // wide range accepts 0 < s < 1/2 in one dimension
    const auto wide =
        nls::cazenave_weissler_pair(1, Rational(2), Rational(1, 4), nls::SRange::Wide);
    CHECK(nls::is_admissible(wide.q, wide.r, 1));
    CHECK_THROWS_AS(
        nls::cazenave_weissler_pair(1, Rational(2), Rational(1, 4), nls::SRange::Proposition),
        std::domain_error);
    // beyond the subcritical window: p > 1 + 4/(n-2s)
    CHECK_THROWS_AS(nls::cazenave_weissler_pair(3, Rational(4), Rational(1, 2)),
                    std::domain_error);
  }

  TEST_CASE("cazenave-weissler pairs are admissible on the precondition box") {
    const std::vector<Rational> s_values{Rational(1, 2), Rational(5, 8),
                                         Rational(3, 4), Rational(7, 8)};
    const std::vector<Rational> p_offsets{Rational(1, 4), Rational(1, 2),
                                          Rational(1), Rational(3, 2),
                                          Rational(2), Rational(3)};
    int checked = 0;
    for (int n = 2; n <= 4; ++n) {
      for (const auto& s : s_values) {
        const Rational s_max = Rational(n, 2) < Rational(1) ? Rational(n, 2) : Rational(1);
        if (!(s < s_max)) continue;
        const Rational p_max = Rational(1) + Rational(4) / (Rational(n) - Rational(2) * s);
        for (const auto& dp : p_offsets) {
          const Rational p = Rational(1) + dp;
          if (p > p_max) continue;
          const auto pair = nls::cazenave_weissler_pair(n, p, s);
          CHECK(nls::is_admissible(pair.q, pair.r, n));
          ++checked;
        }
      }
    }
    CHECK(checked > 20);
  }

  TEST_CASE("alpha") {
    CHECK(nls::alpha(1).is_infinite());
    CHECK(nls::alpha(2).is_infinite());
    CHECK(nls::alpha(3) == Rational(5));
    CHECK(nls::alpha(4) == Rational(3));
    CHECK(nls::alpha(6) == Rational(2));
    CHECK_THROWS_AS(nls::alpha(0), std::domain_error);
  }

  TEST_CASE("criticality classification") {
    const auto crit = nls::classify_criticality(2, Rational(3));
    CHECK(crit.beta == Rational(0));
    CHECK(crit.cls == nls::Criticality::PseudoConformalCritical);

    const auto sub = nls::classify_criticality(1, Rational(3));
    CHECK(sub.beta == Rational(-1));
    CHECK(sub.cls == nls::Criticality::MassSubcritical);

    const auto energy = nls::classify_criticality(3, Rational(5));
    CHECK(energy.beta == Rational(4));
    CHECK(energy.cls == nls::Criticality::EnergyCritical);

    CHECK(nls::classify_criticality(3, Rational(4)).cls ==
          nls::Criticality::Intermediate);
    CHECK(nls::classify_criticality(3, Rational(6)).cls ==
          nls::Criticality::EnergySupercritical);
    CHECK_THROWS_AS(nls::classify_criticality(2, Rational(1)), std::domain_error);
  }

  TEST_CASE("beta vanishes exactly at p = 1 + 4/n") {
    for (int n = 1; n <= 8; ++n) {
      const Rational p = Rational(1) + Rational(4, n);
      CHECK(nls::classify_criticality(n, p).beta == Rational(0));
    }
  }

  TEST_CASE("proof pair") {
    const auto p23 = nls::proof_pair(2, Rational(3));
    CHECK(p23.q == Rational(4));
    CHECK(p23.r == Rational(4));
    // q = 4(p+1)/(n(p-1)): n = 1, p = 5 gives 24/4 = 6.
    const auto p15 = nls::proof_pair(1, Rational(5));
    CHECK(p15.q == Rational(6));
    CHECK(p15.r == Rational(6));
    const auto p33 = nls::proof_pair(3, Rational(3));
    CHECK(p33.q == Rational(8, 3));
    CHECK(p33.r == Rational(4));
    CHECK_THROWS_AS(nls::proof_pair(3, Rational(5)), std::domain_error);
    CHECK_THROWS_AS(nls::proof_pair(3, Rational(1)), std::domain_error);
  }

  TEST_CASE("proof pairs are admissible for sampled 1 < p < alpha(n)") {
    const std::vector<Rational> ps{Rational(5, 4), Rational(3, 2), Rational(2),
                                   Rational(7, 3), Rational(3), Rational(4),
                                   Rational(5), Rational(9)};
    for (int n = 1; n <= 5; ++n) {
      for (const auto& p : ps) {
        if (!(p < nls::alpha(n))) continue;
        const auto pair = nls::proof_pair(n, p);
        CHECK(nls::is_admissible(pair.q, pair.r, n));
      }
    }
  }

  TEST_CASE("report JSON") {
    const auto report = nls::exponent_report(3, Rational(3), Rational(1, 2));
    const std::string json = nls::to_json(report);
    CHECK(json.find("\"gamma\": \"4\"") != std::string::npos);
    CHECK(json.find("\"rho\": \"3\"") != std::string::npos);
    CHECK(json.find("\"alpha\": \"5\"") != std::string::npos);
    CHECK(json.find("\"class\": \"intermediate\"") != std::string::npos);
  }
}
