#include "polylab/green_flat.hpp"

#include <cmath>

namespace polylab {

BlockField<double> GreenModel::radial_part() const {
    BlockField<double> u(dim_);
    u.add_radial(radial_power<double>(lambda_, 2 * dim_.k() - dim_.n()));
    if (mass_ != 0.0) u.add_radial(radial_power<double>(mass_, 0));
    return u;
}

BlockField<double> GreenModel::correction_part() const {
    BlockField<double> u(dim_);
    const long s = 2 * dim_.k() - dim_.n();
    if (!psi4_.is_zero()) u.add_poly_times_radial(psi4_, radial_power<double>(lambda_, s));
    if (!psi5_.is_zero()) u.add_poly_times_radial(psi5_, radial_power<double>(lambda_, s));
    return u;
}

BlockField<double> GreenModel::as_field() const {
    BlockField<double> u = radial_part();
    const long s = 2 * dim_.k() - dim_.n();
    if (!psi4_.is_zero()) u.add_poly_times_radial(psi4_, radial_power<double>(lambda_, s));
    if (!psi5_.is_zero()) u.add_poly_times_radial(psi5_, radial_power<double>(lambda_, s));
    for (const auto& b : remainder_.blocks()) u = [&] {
        BlockField<double> v = u;
        v.add_harmonic_block(b.h, b.g);
        return v;
    }();
    return u;
}

double GreenModel::eval_point(const std::vector<double>& x) const {
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    const double r = std::sqrt(r2);
    const double core = lambda_ * std::pow(r, 2 * dim_.k() - dim_.n());
    double v = core * (1.0 + psi4_.eval(x) + psi5_.eval(x)) + mass_;
    if (!remainder_.empty()) v += remainder_.eval_point(x);
    return v;
}

RadialTestField RadialTestField::bump(const Dimension& dim, double R) {
    const int m = 2 * dim.k() + 2;
    RadialTestField phi;
    phi.support_radius = R;
    phi.jet = [R, m](const double& r, int order) {
        if (r >= R) return Jet<double>::constant(0.0, order);
        auto var = Jet<double>::variable(r, order);
        auto cut = (Jet<double>::constant(1.0, order) - (1.0 / (R * R)) * (var * var)).pow_int(m);
        return exp(-(var * var)) * cut;
    };
    return phi;
}

double dirac_check(const RadialTestField& phi, const Dimension& dim) {
    const int n = dim.n(), k = dim.k();
    const double b = bubble_b_nk(dim).to_double();
    const double om = dim.sphere_area().to_double();
    auto lapk = [&](double rho) {
        RadialJet jet(rho, phi.jet(rho, 2 * k + 1).derivative_list());
        for (int i = 0; i < k; ++i) jet = radial_laplacian(jet, dim);
        return jet.values[0];
    };
    auto integrand = [&](double rho) { return std::pow(rho, 2 * k - 1) * lapk(rho); };
    QuadResult q = integrate(integrand, 0.0, phi.support_radius, 1e-12);
    (void)n;
    const double value = b * om * q.value;
    return std::abs(value - phi.jet(0.0, 0).value());
}

MassLimitResult mass_limit(const GreenModel& model) {
    const Dimension& dim = model.dim();
    BlockField<double> u = model.as_field();

    std::vector<double> values;
    for (int j = 3; j <= 12; ++j) values.push_back(boundary_functional(u, std::pow(2.0, -j), dim));

    MassLimitResult out;
    out.numeric_limit = richardson_limit(values, &out.extrapolation_error);
    const double h0 = model.remainder().empty() ? 0.0 : model.remainder().value_at_origin();
    out.reference = theta_constant(dim).to_double() * model.lambda() * (model.mass() + h0);

    BlockField<double> corr = model.correction_part();
    if (!corr.empty()) {
        BlockField<double> radial = model.radial_part();
        double worst = 0.0;
        for (double r : {0.25, 0.5, 1.0})
            worst = std::max(worst, std::abs(bilinear_form(radial, corr, r, dim)));
        out.psi_contribution = worst;
        const double scale = std::max(std::abs(out.numeric_limit), 1.0);
        if (worst > 1e-9 * scale)
            throw std::runtime_error("mass_limit: polynomial corrections contributed " +
                                     std::to_string(worst));
    }
    return out;
}

GreenBounds green_bounds(const GreenModel& model, double r0, int radial_samples) {
    const int n = model.dim().n();
    const double b = bubble_b_nk(model.dim()).to_double();
    GreenBounds out;
    out.lower = std::numeric_limits<double>::infinity();
    out.upper = 0.0;
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        dirs.push_back(e);
        e[static_cast<std::size_t>(i)] = -1.0;
        dirs.push_back(e);
    }
    std::vector<double> diag(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    dirs.push_back(diag);
    for (int s = 1; s <= radial_samples; ++s) {
        const double r = r0 * s / radial_samples;
        for (const auto& d : dirs) {
            std::vector<double> x(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) x[i] = r * d[i];
            const double ratio =
                model.eval_point(x) * std::pow(r, model.dim().n() - 2 * model.dim().k()) / b;
            out.lower = std::min(out.lower, ratio);
            out.upper = std::max(out.upper, ratio);
        }
    }
    return out;
}

}  // namespace polylab
