#pragma once

#include <span>
#include <vector>

#include "polylab/dimension.hpp"
#include "polylab/parallel.hpp"
#include "polylab/quadrature.hpp"
#include "polylab/radial.hpp"

namespace polylab {

/// base^(num/den) for positive rational base.
inline Scalar rational_pow(const Rational& base, long num, unsigned long den) {
    if (base <= 0) throw std::domain_error("rational_pow: base must be positive");
    Scalar s = Scalar::root(base.get_num().get_ui(), num, den);
    if (base.get_den() != 1) s *= Scalar::root(base.get_den().get_ui(), -num, den);
    return s;
}

/// c_{n,k}: k-th root of prod_{j=-k}^{k-1} (n+2j), kept symbolic.
inline Scalar bubble_c_nk(const Dimension& dim) {
    unsigned long prod = 1;
    for (int j = -dim.k(); j <= dim.k() - 1; ++j)
        prod *= static_cast<unsigned long>(dim.n() + 2 * j);
    return Scalar::root(prod, 1, static_cast<unsigned long>(dim.k()));
}

/// b_{n,k}, with b^{-1} = 2^{k-1} (k-1)! prod_{i=1}^k (n-2i) omega_{n-1}.
inline Scalar bubble_b_nk(const Dimension& dim) {
    Rational c(1);
    for (int i = 1; i < dim.k(); ++i) c *= 2 * i;  // 2^{k-1} (k-1)!
    for (int i = 1; i <= dim.k(); ++i) c *= (dim.n() - 2 * i);
    return (Scalar(c) * dim.sphere_area()).inverse();
}

struct BubbleSpec {
    Dimension dim;
    Rational mu;
    Scalar c_nk;
    Scalar b_nk;

    static BubbleSpec make(const Dimension& dim, Rational mu = Rational(1)) {
        if (mu <= 0) throw std::invalid_argument("BubbleSpec: mu must be positive");
        return BubbleSpec{dim, mu, bubble_c_nk(dim), bubble_b_nk(dim)};
    }
};

/// U_mu as an exact member of the closed radial family:
/// mu^{(n-2k)/2} (mu^2 + c^{-1} r^2)^{-(n-2k)/2}.
inline ClosedFormRadial bubble_closed_form(const BubbleSpec& spec) {
    const int m = spec.dim.n() - 2 * spec.dim.k();
    return ClosedFormRadial::kernel(rational_pow(spec.mu, m, 2), 0, Rational(m, 2),
                                    Scalar(spec.mu * spec.mu), spec.c_nk.inverse());
}

/// U_mu^{2*-1} = mu^{(n+2k)/2} (mu^2 + c^{-1} r^2)^{-(n+2k)/2}.
inline ClosedFormRadial bubble_nonlinearity_closed_form(const BubbleSpec& spec) {
    const int m = spec.dim.n() + 2 * spec.dim.k();
    return ClosedFormRadial::kernel(rational_pow(spec.mu, m, 2), 0, Rational(m, 2),
                                    Scalar(spec.mu * spec.mu), spec.c_nk.inverse());
}

inline double bubble_value(const BubbleSpec& spec, double r) {
    const double m = (spec.dim.n() - 2 * spec.dim.k()) / 2.0;
    const double mu = spec.mu.get_d();
    const double c_inv = spec.c_nk.inverse().to_double();
    return std::pow(mu, m) * std::pow(mu * mu + c_inv * r * r, -m);
}

/// max over the grid of |Delta_0^k U_mu - U_mu^{2*-1}| / U_mu^{2*-1},
/// with the left side differentiated symbolically.
inline double bubble_pde_residual(const BubbleSpec& spec, std::span<const double> grid,
                                  par::Policy pol = par::default_policy()) {
    ClosedFormRadial lhs = iterate_polyharmonic(bubble_closed_form(spec), spec.dim.k(), spec.dim);
    ClosedFormRadial rhs = bubble_nonlinearity_closed_form(spec);
    return par::max(
        grid.size(),
        [&](std::size_t i) {
            const double r = grid[i];
            const double want = rhs.eval(r);
            return std::abs(lhs.eval(r) - want) / want;
        },
        pol);
}

/// Relative defect of c^{(n-2k)/2} = b_{n,k} int U^{2*-1} dx at mu = 1.
/// The radial integral runs to R = 1e4 sqrt(c) and the tail is integrated
/// analytically from the leading power of the integrand.
inline double bubble_mass_identity(const BubbleSpec& spec) {
    if (spec.mu != 1)
        throw std::invalid_argument("bubble_mass_identity: identity is evaluated at mu = 1");
    const int n = spec.dim.n(), k = spec.dim.k();
    const double c = spec.c_nk.to_double();
    const double cinv = 1.0 / c;
    const double R = 1e4 * std::sqrt(c);
    const double expo = (n + 2 * k) / 2.0;
    auto integrand = [&](double r) {
        return std::pow(1.0 + cinv * r * r, -expo) * std::pow(r, n - 1);
    };
    QuadResult core = integrate(integrand, 0.0, std::sqrt(c), 1e-13);
    QuadResult outer = integrate(integrand, std::sqrt(c), R, 1e-13);
    const double tail = std::pow(c, expo) * std::pow(R, -2.0 * k) / (2.0 * k);
    const double integral = spec.dim.sphere_area().to_double() * (core.value + outer.value + tail);
    const double target = std::pow(c, (n - 2 * k) / 2.0);
    return std::abs(target - spec.b_nk.to_double() * integral) / target;
}

}  // namespace polylab
