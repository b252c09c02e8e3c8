#include "polylab/pohozaev.hpp"

#include <cmath>
#include <stdexcept>

namespace polylab {

namespace {

double quadrature_surface_value(const BlockField<double>& u, const BlockField<double>& v, double r,
                                const Dimension& dim, int quad_order, bool polarized) {
    // Node-based evaluation on the sphere of radius r: each quantity is
    // synthesized pointwise from its per-block radial value and the unit
    // harmonic, then products are integrated with the full product rule.
    if (dim.n() > 6)
        throw std::invalid_argument(
            "boundary_functional: quadrature path supports n <= 6; use ExactGram");
    PohozaevTerms<double> terms(dim, r);
    auto U = terms.analyze(u);
    auto V = terms.analyze(v);
    SphericalQuadrature q = SphericalQuadrature::full_product(dim, quad_order);

    // per-node harmonic values of each block (on the unit sphere)
    auto node_values = [&](const BlockField<double>& f) {
        std::vector<std::vector<double>> hv(f.blocks().size(),
                                            std::vector<double>(q.size(), 0.0));
        for (std::size_t b = 0; b < f.blocks().size(); ++b)
            for (std::size_t i = 0; i < q.size(); ++i)
                hv[b][i] = f.blocks()[b].h.eval(q.nodes()[i]);
        return hv;
    };
    auto hu = node_values(u);
    auto hv = node_values(v);

    const double om = dim.sphere_area().to_double();
    auto gram_uv = [&](std::size_t b, std::size_t c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) acc += q.weights()[i] * hu[b][i] * hv[c][i];
        return acc / om;  // reduced pairing, a multiple of omega like the exact path
    };
    if (polarized) return terms.bilinear_reduced(U, V, gram_uv) * om;
    return terms.quadratic_reduced(U, gram_uv) * om;
}

}  // namespace

double richardson_limit(const std::vector<double>& values, double* error_out) {
    // remainder is O(r) on radii halving each step: one Richardson level for
    // the linear part, one for the quadratic part, then pick the entry with
    // the smallest successive difference (small radii can be noise-limited)
    std::vector<double> e1;
    for (std::size_t j = 0; j + 1 < values.size(); ++j) e1.push_back(2 * values[j + 1] - values[j]);
    std::vector<double> e2;
    for (std::size_t j = 0; j + 1 < e1.size(); ++j) e2.push_back((4 * e1[j + 1] - e1[j]) / 3);
    std::size_t best = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < e2.size(); ++j) {
        const double d = std::abs(e2[j] - e2[j - 1]);
        if (d < best_err) {
            best_err = d;
            best = j;
        }
    }
    if (error_out) *error_out = best_err + 1e-12 * std::abs(e2[best]);
    return e2[best];
}

RadialFn<double> radial_from_samples(std::function<double(double)> f, double h_rel) {
    return [f = std::move(f), h_rel](const double& r, int order) {
        const double h = std::max(r, 1.0) * h_rel;
        // central finite differences: d^m f via binomial stencil of width m
        std::vector<double> deriv(static_cast<std::size_t>(order) + 1, 0.0);
        for (int m = 0; m <= order; ++m) {
            double acc = 0.0;
            for (int j = 0; j <= m; ++j) {
                double c = 1.0;
                for (int t = 0; t < j; ++t) c *= static_cast<double>(m - t) / (t + 1);
                acc += (j % 2 == 0 ? 1.0 : -1.0) * c * f(r + (m / 2.0 - j) * h);
            }
            deriv[static_cast<std::size_t>(m)] = acc / std::pow(h, m);
        }
        return Jet<double>::from_derivatives(deriv);
    };
}

double boundary_functional(const BlockField<double>& u, double r, const Dimension& dim,
                           SurfacePath path, int quad_order) {
    if (!(r > 0)) throw std::invalid_argument("boundary_functional: radius must be positive");
    if (path == SurfacePath::Quadrature)
        return quadrature_surface_value(u, u, r, dim, quad_order, false);
    PohozaevTerms<double> terms(dim, r);
    auto U = terms.analyze(u);
    auto gram = block_gram(u, u);
    const double om = dim.sphere_area().to_double();
    return terms.quadratic_reduced(
               U, [&](std::size_t b, std::size_t c) { return gram[b][c].get_d(); }) *
           om;
}

Scalar boundary_functional_exact(const BlockField<Rational>& u, const Rational& r,
                                 const Dimension& dim) {
    if (!(r > 0)) throw std::invalid_argument("boundary_functional_exact: radius must be positive");
    PohozaevTerms<Rational> terms(dim, r);
    auto U = terms.analyze(u);
    auto gram = block_gram(u, u);
    Rational reduced = terms.quadratic_reduced(
        U, [&](std::size_t b, std::size_t c) { return gram[b][c]; });
    return Scalar(reduced) * dim.sphere_area();
}

double bilinear_form(const BlockField<double>& u, const BlockField<double>& v, double r,
                     const Dimension& dim, SurfacePath path, int quad_order) {
    if (!(r > 0)) throw std::invalid_argument("bilinear_form: radius must be positive");
    if (path == SurfacePath::Quadrature)
        return quadrature_surface_value(u, v, r, dim, quad_order, true);
    PohozaevTerms<double> terms(dim, r);
    auto U = terms.analyze(u);
    auto V = terms.analyze(v);
    auto gram = block_gram(u, v);
    const double om = dim.sphere_area().to_double();
    return terms.bilinear_reduced(
               U, V, [&](std::size_t b, std::size_t c) { return gram[b][c].get_d(); }) *
           om;
}

Scalar bilinear_form_exact(const BlockField<Rational>& u, const BlockField<Rational>& v,
                           const Rational& r, const Dimension& dim) {
    PohozaevTerms<Rational> terms(dim, r);
    auto U = terms.analyze(u);
    auto V = terms.analyze(v);
    auto gram = block_gram(u, v);
    Rational reduced = terms.bilinear_reduced(
        U, V, [&](std::size_t b, std::size_t c) { return gram[b][c]; });
    return Scalar(reduced) * dim.sphere_area();
}

PohozaevReport identity_residual(const RadialFn<double>& u, const RadialScalarFn& f, double p,
                                 double s, double r, const Dimension& dim) {
    if (!(s >= 0) || !(s < r)) throw std::invalid_argument("identity_residual: need 0 <= s < r");
    if (!(p >= 2)) throw std::invalid_argument("identity_residual: need p >= 2");
    const int n = dim.n(), k = dim.k();
    const double om = dim.sphere_area().to_double();
    const double half_gap = (n - 2 * k) / 2.0;

    BlockField<double> field(dim);
    field.add_radial(u);

    PohozaevReport rep;
    rep.r = r;
    rep.s = s;
    rep.boundary_outer = boundary_functional(field, r, dim);
    rep.boundary_inner = s == 0.0 ? 0.0 : boundary_functional(field, s, dim);

    // pointwise data from jets: u, u', Delta^k u, f, f'
    auto lapk = [&](double rho) {
        RadialJet jet(rho, u(rho, 2 * k + 1).derivative_list());
        for (int i = 0; i < k; ++i) jet = radial_laplacian(jet, dim);
        return jet.values[0];
    };
    auto shell = [&](double rho) { return std::pow(rho, n - 1); };

    auto err_integrand = [&](double rho) {
        Jet<double> j = u(rho, 1);
        const double val = j.value();
        const double dil = half_gap * val + rho * j.derivative(1);
        const double sgn_pow = std::copysign(std::pow(std::abs(val), p - 1.0), val);
        return dil * (lapk(rho) - f.value(rho) * sgn_pow) * shell(rho);
    };
    auto fp_integrand = [&](double rho) {
        return f.value(rho) * std::pow(std::abs(u(rho, 0).value()), p) * shell(rho);
    };
    auto gradf_integrand = [&](double rho) {
        return rho * f.deriv(rho) * std::pow(std::abs(u(rho, 0).value()), p) * shell(rho);
    };

    QuadResult e1 = integrate(err_integrand, s, r, 1e-12);
    QuadResult e2 = integrate(fp_integrand, s, r, 1e-12);
    QuadResult e3 = integrate(gradf_integrand, s, r, 1e-12);

    rep.error_term = om * e1.value;
    rep.exponent_defect_term = (half_gap - n / p) * om * e2.value;
    rep.grad_f_term = -(1.0 / p) * om * e3.value;
    const double outer_surf =
        (r / p) * om * shell(r) * f.value(r) * std::pow(std::abs(u(r, 0).value()), p);
    const double inner_surf =
        s == 0.0 ? 0.0
                 : (s / p) * om * shell(s) * f.value(s) * std::pow(std::abs(u(s, 0).value()), p);
    rep.surface_f_terms = outer_surf - inner_surf;

    const double lhs = rep.boundary_outer - rep.boundary_inner;
    const double rhs =
        rep.error_term + rep.exponent_defect_term + rep.grad_f_term + rep.surface_f_terms;
    rep.residual = lhs - rhs;

    double scale = std::abs(lhs) + std::abs(rep.error_term) + std::abs(rep.exponent_defect_term) +
                   std::abs(rep.grad_f_term) + std::abs(rep.surface_f_terms);
    rep.quad_error_estimate =
        om * (e1.error + std::abs(half_gap - n / p) * e2.error + e3.error / p) + 1e-14 * scale;
    return rep;
}

Scalar theta_constant(const Dimension& dim) {
    const int n = dim.n(), k = dim.k();
    Rational c = Rational(1, 4);
    for (int i = 0; i < k; ++i) c *= 2;             // 2^{k-2}
    for (int i = 2; i <= k - 1; ++i) c *= i;        // (k-1)!
    c *= Rational(n - 2) * (n - 2 * k);
    for (int i = 2; i <= k; ++i) c *= (n - 2 * i);
    return Scalar(c) * dim.sphere_area();
}

SingularMassResult singular_mass_limit(double lambda, const BlockField<double>& H,
                                       const Dimension& dim) {
    const int k = dim.k(), n = dim.n();
    BlockField<double> u = H;
    u.add_radial(radial_power<double>(lambda, 2 * k - n));

    std::vector<double> values;
    for (int j = 3; j <= 12; ++j)
        values.push_back(boundary_functional(u, std::pow(2.0, -j), dim));

    SingularMassResult out;
    out.numeric_limit = richardson_limit(values, &out.extrapolation_error);
    out.closed_form = theta_constant(dim).to_double() * lambda * H.value_at_origin();

    const double scale = std::max({std::abs(out.numeric_limit), std::abs(values.back()), 1e-8});
    if (out.extrapolation_error > 0.05 * scale)
        throw std::runtime_error("singular_mass_limit: extrapolation did not converge");
    return out;
}

}  // namespace polylab
