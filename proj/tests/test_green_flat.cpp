#include "doctest.h"

#include <cmath>
#include <numbers>

#include "polylab/green_flat.hpp"

using namespace polylab;

TEST_CASE("fundamental solution closed forms and polyharmonicity") {
    const double pi = std::numbers::pi;
    auto g31 = fundamental_solution(Dimension(3, 1));
    CHECK(g31.eval(2.0) == doctest::Approx(1.0 / (4 * pi * 2.0)).epsilon(1e-15));
    auto g52 = fundamental_solution(Dimension(5, 2));
    CHECK(g52.eval(3.0) == doctest::Approx(1.0 / (16 * pi * pi * 3.0)).epsilon(1e-15));
    for (auto [n, k] : {std::pair{3, 1}, {5, 2}, {7, 3}, {9, 4}}) {
        Dimension dim(n, k);
        CHECK(iterate_polyharmonic(fundamental_solution(dim), k, dim).empty());
    }
}

TEST_CASE("dirac property of G0") {
    // Gaussian bump x smooth cutoff, phi(0) = 1
    for (auto [n, k] : {std::pair{5, 2}, {7, 3}}) {
        Dimension dim(n, k);
        auto phi = RadialTestField::bump(dim, 6.0);
        CHECK(phi.jet(0.0, 0).value() == doctest::Approx(1.0));
        CHECK(dirac_check(phi, dim) <= 1e-6);
    }
    // phi vanishing near 0: both sides vanish
    {
        Dimension dim(5, 2);
        RadialTestField phi;
        phi.support_radius = 4.0;
        phi.jet = [](const double& r, int order) {
            auto var = Jet<double>::variable(r, order);
            auto window = (var - Jet<double>::constant(1.0, order)) *
                          (Jet<double>::constant(4.0, order) - var);
            if (r <= 1.0 || r >= 4.0) return Jet<double>::constant(0.0, order);
            return exp(Jet<double>::constant(-1.0, order) * window.reciprocal());
        };
        CHECK(dirac_check(phi, dim) <= 1e-8);
    }
}

TEST_CASE("mass limit: plain models at (5,2)") {
    Dimension dim(5, 2);
    // A = 1, h = 0, no corrections: limit = Theta(5,2) b_{5,2}
    auto res = mass_limit(GreenModel::plain(dim, 1.0));
    const double want = theta_constant(dim).to_double() * bubble_b_nk(dim).to_double();
    CHECK(std::abs(res.numeric_limit - want) <= 1e-6 * std::abs(want));
    CHECK(res.reference == doctest::Approx(want).epsilon(1e-14));
    // A = 0: limit 0
    auto zero = mass_limit(GreenModel::plain(dim, 0.0));
    CHECK(std::abs(zero.numeric_limit) < 1e-9);
    // linearity in A: strictly increasing across three masses
    auto lo = mass_limit(GreenModel::plain(dim, -0.5));
    auto hi = mass_limit(GreenModel::plain(dim, 2.0));
    CHECK(lo.numeric_limit < zero.numeric_limit);
    CHECK(zero.numeric_limit < res.numeric_limit);
    CHECK(res.numeric_limit < hi.numeric_limit);
}

TEST_CASE("mass limit: mean-zero corrections leave the limit unchanged at (8,2)") {
    Dimension dim(8, 2);
    const int n = 8;
    auto plain = mass_limit(GreenModel::plain(dim, 1.0));

    // psi4 from the correction pipeline with a trace-free Hessian
    auto zeros = SymMatrix(n, std::vector<Rational>(n, Rational(0)));
    auto S = zeros;
    S[0][0] = 1;
    S[1][1] = -1;
    auto corr = green_correction_pipeline(S, zeros, HomPoly(n, 5), dim);
    GreenModel model(dim, bubble_b_nk(dim).to_double(), 1.0, corr.psi4, HomPoly(n, 5),
                     BlockField<double>(dim));
    auto res = mass_limit(model);
    CHECK(std::abs(res.numeric_limit - plain.numeric_limit) <=
          1e-6 * std::abs(plain.numeric_limit));
    CHECK(res.psi_contribution <= 1e-10);

    // a remainder h moves the limit by Theta * lambda * h(0)
    BlockField<double> h(dim);
    h.add_radial([](const double& r, int order) {
        auto var = Jet<double>::variable(r, order);
        return exp(-(var * var)) * Jet<double>::constant(0.3, order);
    });
    GreenModel with_h(dim, bubble_b_nk(dim).to_double(), 1.0, HomPoly(n, 4), HomPoly(n, 5), h);
    auto res_h = mass_limit(with_h);
    CHECK(res_h.numeric_limit == doctest::Approx(res_h.reference).epsilon(1e-6));
    CHECK(res_h.reference == doctest::Approx(plain.reference * 1.3).epsilon(1e-12));
}

TEST_CASE("model validation rejects non-mean-zero corrections") {
    Dimension dim(8, 2);
    HomPoly bad(8, 4);
    bad += HomPoly::radius_squared(8) * HomPoly::radius_squared(8);  // average != 0
    CHECK_THROWS_AS(GreenModel(dim, 1.0, 0.0, bad, HomPoly(8, 5), BlockField<double>(dim)),
                    std::invalid_argument);
}

TEST_CASE("two-sided bounds") {
    // plain G0: ratio identically 1
    Dimension dim(5, 2);
    auto plain = green_bounds(GreenModel(dim, bubble_b_nk(dim).to_double(), 0.0, HomPoly(5, 4),
                                         HomPoly(5, 5), BlockField<double>(dim)),
                              1.0);
    CHECK(plain.lower == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(plain.upper == doctest::Approx(1.0).epsilon(1e-13));

    // corrected model at (8,2) on r <= 0.5: finite positive envelope constants
    Dimension dim8(8, 2);
    auto zeros = SymMatrix(8, std::vector<Rational>(8, Rational(0)));
    auto S = zeros;
    S[0][0] = 1;
    S[1][1] = -1;
    auto corr = green_correction_pipeline(S, zeros, HomPoly(8, 5), dim8);
    GreenModel model(dim8, bubble_b_nk(dim8).to_double(), 1.0, corr.psi4, HomPoly(8, 5),
                     BlockField<double>(dim8));
    auto b = green_bounds(model, 0.5);
    CHECK(b.lower > 0.0);
    CHECK(b.upper < 1.0 / b.lower + 1e3);  // finite two-sided constant C
    CHECK(b.upper >= b.lower);
}
