#include "regimes.hpp"

#include "units.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace xsim;

TEST_CASE("Zeeman gap value at 9.8 G and exact quadratic scaling") {
  const IonSpecies yb = IonSpecies::yb171();
  const double d = zeeman_gap(yb, gauss_to_tesla(9.8));
  CHECK(d / kTwoPi / 1e3 == doctest::Approx(29.0).epsilon(1.5 / 29.0));
  CHECK(zeeman_gap(yb, 0.0) == 0.0);
  const double b = 3.3e-4;
  CHECK(zeeman_gap(yb, 2.0 * b) == doctest::Approx(4.0 * zeeman_gap(yb, b)).epsilon(1e-14));
  CHECK_THROWS_AS((void)zeeman_gap(yb, -1.0), std::invalid_argument);
}

TEST_CASE("regime classification") {
  const double delta = from_khz(29.0);
  SUBCASE("Webster-style parameters are nonlinear") {
    const RegimeReport r = classify(from_khz(1.9), 0.0071 * from_khz(1.9), delta, gauss_to_tesla(9.8));
    CHECK(r.regime == Regime::kNonlinear);
    CHECK(r.delta_over_omega_g == doctest::Approx(29.0 / 1.9).epsilon(1e-12));
    CHECK(r.b_field_margin < 1e-2);
  }
  SUBCASE("zero splitting is linear") {
    const RegimeReport r = classify(from_khz(1.0), from_khz(1.0), 0.0, 0.0);
    CHECK(r.regime == Regime::kLinear);
  }
  SUBCASE("comparable scales are intermediate") {
    const RegimeReport r = classify(delta, delta, delta, 0.0);
    CHECK(r.regime == Regime::kIntermediate);
  }
}

TEST_CASE("classification is monotone in omega_g at fixed delta") {
  const double delta = from_khz(10.0);
  int rank_prev = 0; // nonlinear=0, intermediate=1, linear=2
  for (double og_khz = 0.1; og_khz < 1e4; og_khz *= 3.0) {
    const double og = from_khz(og_khz);
    const RegimeReport r = classify(og, og, delta, 0.0);
    const int rank = r.regime == Regime::kLinear ? 2 : (r.regime == Regime::kIntermediate ? 1 : 0);
    CHECK(rank >= rank_prev);
    rank_prev = rank;
  }
}

TEST_CASE("dressed-Stark mediation of the splitting") {
  const IonSpecies yb = IonSpecies::yb171();
  SUBCASE("omega_z = 0 reduces to the bare gap") {
    CHECK(dressed_delta(yb, gauss_to_tesla(9.8), 0.0, from_mhz(1.0), from_khz(20.0)) ==
          doctest::Approx(zeeman_gap(yb, gauss_to_tesla(9.8))));
  }
  SUBCASE("headline mediation value at B = 0") {
    const double d = dressed_delta(yb, 0.0, from_khz(10.0), from_mhz(1.0), from_khz(20.0));
    CHECK(d / kTwoPi == doctest::Approx(-50.0).epsilon(0.01));
  }
  SUBCASE("added term is odd in delta_z") {
    const double plus = dressed_delta(yb, 0.0, from_khz(10.0), from_mhz(1.0), from_khz(20.0));
    const double minus = dressed_delta(yb, 0.0, from_khz(10.0), -from_mhz(1.0), from_khz(20.0));
    CHECK(plus == doctest::Approx(-minus).epsilon(1e-12));
  }
  SUBCASE("validity constraint enforced") {
    CHECK_THROWS_AS(
        (void)dressed_delta(yb, 0.0, from_khz(15.0), from_khz(10.0), from_khz(20.0)),
        std::domain_error);
  }
}
