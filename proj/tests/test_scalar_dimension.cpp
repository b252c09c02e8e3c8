#include "doctest.h"

#include <numbers>

#include "polylab/dimension.hpp"
#include "polylab/scalar.hpp"

using namespace polylab;

TEST_CASE("scalar rational arithmetic and root tags") {
    Scalar a(1, 3);
    Scalar b(1, 6);
    CHECK((a + b).as_rational() == Rational(1, 2));

    Scalar r = Scalar::root(105, 1, 2);  // sqrt(105)
    CHECK(!r.is_rational());
    CHECK(r.pow_int(2).as_rational() == 105);
    CHECK(r.to_double() == doctest::Approx(std::sqrt(105.0)).epsilon(1e-15));

    // perfect powers collapse
    CHECK(Scalar::root(4, 1, 2).as_rational() == 2);
    CHECK(Scalar::root(8, 2, 3).as_rational() == 4);

    // integer exponent parts fold into the rational factor: 2^(3/2) = 2*sqrt(2)
    Scalar t = Scalar::root(2, 3, 2);
    CHECK(t.pow_int(2).as_rational() == 8);
    CHECK(t.to_double() == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));

    Scalar inv = r.inverse();
    CHECK((r * inv).as_rational() == 1);

    CHECK_THROWS_AS(a + r, std::invalid_argument);
}

TEST_CASE("scalar pi powers and high-precision evaluation") {
    Scalar p = Scalar(2) * Scalar::pi(2);
    CHECK(p.to_double() == doctest::Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
    mpf_class hp = (Scalar::root(2, 1, 2)).to_mpf(256);
    mpf_class sq = hp * hp - 2;
    CHECK(std::abs(sq.get_d()) < 1e-60);
    mpf_class pi_val = Scalar::pi(1).to_mpf(200);
    CHECK(std::abs(pi_val.get_d() - std::numbers::pi) < 1e-15);
}

TEST_CASE("dimension invariants and constants") {
    CHECK_THROWS_AS(Dimension(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(2, 1), std::invalid_argument);

    Dimension d31(3, 1);
    CHECK(d31.crit_exp() == Rational(6));
    CHECK(d31.crit_exp() > 2);

    Dimension d52(5, 2);
    CHECK(d52.crit_exp() == Rational(10));

    Dimension d94(9, 4);
    CHECK(d94.crit_exp() == Rational(18));

    // omega_{n-1} closed forms: 2pi, 4pi, 2pi^2, 8pi^2/3, pi^3, 16pi^3/15
    const double pi = std::numbers::pi;
    CHECK(Dimension::unit_sphere_area(2).to_double() == doctest::Approx(2 * pi));
    CHECK(Dimension::unit_sphere_area(3).to_double() == doctest::Approx(4 * pi));
    CHECK(Dimension::unit_sphere_area(4).to_double() == doctest::Approx(2 * pi * pi));
    CHECK(Dimension::unit_sphere_area(5).to_double() == doctest::Approx(8 * pi * pi / 3));
    CHECK(Dimension::unit_sphere_area(6).to_double() == doctest::Approx(pi * pi * pi));
    CHECK(Dimension::unit_sphere_area(7).to_double() == doctest::Approx(16 * std::pow(pi, 3) / 15));
    CHECK(Dimension::unit_sphere_area(8).to_double() == doctest::Approx(std::pow(pi, 4) / 3));
}
