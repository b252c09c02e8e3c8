#include "polylab/sphere_gjms.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "polylab/quadrature.hpp"

namespace polylab {

Rational gjms_multiplier(const GjmsSphereSpec& spec, long ell) {
    if (ell < 0) throw std::invalid_argument("gjms_multiplier: ell >= 0 required");
    const Rational lambda = Rational(ell) * (ell + spec.dim.n() - 1);
    Rational prod(1);
    for (const auto& ki : spec.shift_constants) prod *= lambda + ki;
    return prod;
}

SphereGrid::SphereGrid(const Dimension& dim, int L) : dim_(dim), L_(L) {
    if (L < 2) throw std::invalid_argument("SphereGrid: truncation L >= 2 required");
    const double alpha = (dim.n() - 2) / 2.0;
    GaussRule rule = gauss_gegenbauer(2 * L, alpha);
    x_ = rule.x;
    w_ = rule.w;
    beta0_ = std::exp((2 * alpha + 1) * std::numbers::ln2 + 2 * std::lgamma(alpha + 1) -
                      std::lgamma(2 * alpha + 2));
    sqrt_beta_.resize(static_cast<std::size_t>(L) + 1, 0.0);
    for (int j = 1; j <= L; ++j)
        sqrt_beta_[static_cast<std::size_t>(j)] =
            std::sqrt(j * (j + 2 * alpha) / ((2 * j + 2 * alpha + 1) * (2 * j + 2 * alpha - 1)));
    basis_.assign(static_cast<std::size_t>(L) + 1, std::vector<double>(x_.size(), 0.0));
    for (std::size_t node = 0; node < x_.size(); ++node) {
        double pm = 0.0, pc = 1.0 / std::sqrt(beta0_);
        basis_[0][node] = pc;
        for (int ell = 1; ell <= L; ++ell) {
            const double pn =
                (x_[node] * pc - (ell >= 2 ? sqrt_beta_[static_cast<std::size_t>(ell - 1)] : 0.0) * pm) /
                sqrt_beta_[static_cast<std::size_t>(ell)];
            basis_[static_cast<std::size_t>(ell)][node] = pn;
            pm = pc;
            pc = pn;
        }
    }
}

double SphereGrid::basis_at(int ell, double x) const {
    double pm = 0.0, pc = 1.0 / std::sqrt(beta0_);
    for (int j = 1; j <= ell; ++j) {
        const double pn =
            (x * pc - (j >= 2 ? sqrt_beta_[static_cast<std::size_t>(j - 1)] : 0.0) * pm) /
            sqrt_beta_[static_cast<std::size_t>(j)];
        pm = pc;
        pc = pn;
    }
    return pc;
}

std::vector<double> SphereGrid::analyze(std::span<const double> nodal) const {
    std::vector<double> coef(static_cast<std::size_t>(L_) + 1, 0.0);
    for (int ell = 0; ell <= L_; ++ell) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x_.size(); ++j)
            acc += w_[j] * basis_[static_cast<std::size_t>(ell)][j] * nodal[j];
        coef[static_cast<std::size_t>(ell)] = acc;
    }
    return coef;
}

std::vector<double> SphereGrid::synthesize(std::span<const double> coef) const {
    std::vector<double> nodal(x_.size(), 0.0);
    for (std::size_t j = 0; j < x_.size(); ++j) {
        double acc = 0.0;
        for (int ell = 0; ell <= L_ && ell < static_cast<int>(coef.size()); ++ell)
            acc += coef[static_cast<std::size_t>(ell)] * basis_[static_cast<std::size_t>(ell)][j];
        nodal[j] = acc;
    }
    return nodal;
}

double SphereGrid::synthesize_at(std::span<const double> coef, double x) const {
    double acc = 0.0;
    double pm = 0.0, pc = 1.0 / std::sqrt(beta0_);
    acc += coef[0] * pc;
    for (int ell = 1; ell <= L_ && ell < static_cast<int>(coef.size()); ++ell) {
        const double pn =
            (x * pc - (ell >= 2 ? sqrt_beta_[static_cast<std::size_t>(ell - 1)] : 0.0) * pm) /
            sqrt_beta_[static_cast<std::size_t>(ell)];
        acc += coef[static_cast<std::size_t>(ell)] * pn;
        pm = pc;
        pc = pn;
    }
    return acc;
}

std::shared_ptr<const SphereGrid> make_sphere_grid(const Dimension& dim, int L) {
    return std::make_shared<SphereGrid>(dim, L);
}

SpectralRadialField SpectralRadialField::constant(std::shared_ptr<const SphereGrid> grid,
                                                  double value) {
    std::vector<double> nodal(static_cast<std::size_t>(grid->node_count()), value);
    SpectralRadialField f{grid, grid->analyze(nodal)};
    return f;
}

SpectralRadialField SpectralRadialField::from_polar(std::shared_ptr<const SphereGrid> grid,
                                                    const std::function<double(double)>& f_of_cos) {
    std::vector<double> nodal(static_cast<std::size_t>(grid->node_count()));
    for (int j = 0; j < grid->node_count(); ++j)
        nodal[static_cast<std::size_t>(j)] = f_of_cos(grid->nodes()[static_cast<std::size_t>(j)]);
    return SpectralRadialField{grid, grid->analyze(nodal)};
}

double SpectralRadialField::norm() const {
    double acc = 0.0;
    for (double c : coef) acc += c * c;
    return std::sqrt(acc);
}

SpectralRadialField apply_gjms(const GjmsSphereSpec& spec, const SpectralRadialField& field) {
    SpectralRadialField out = field;
    for (std::size_t ell = 0; ell < out.coef.size(); ++ell)
        out.coef[ell] *= gjms_multiplier(spec, static_cast<long>(ell)).get_d();
    return out;
}

StereographicBubble stereographic_bubble(const GjmsSphereSpec& spec, double mu,
                                         std::shared_ptr<const SphereGrid> grid) {
    if (!(mu > 0)) throw std::invalid_argument("stereographic_bubble: mu > 0 required");
    const Dimension& dim = spec.dim;
    const double m = (dim.n() - 2 * dim.k()) / 2.0;
    const double cinv = bubble_c_nk(dim).inverse().to_double();
    auto closed = [m, cinv, mu](double x) {
        // chart y = 2 tan(theta/2): y^2 = 4(1-x)/(1+x); weight (1+y^2/4)^{m}
        const double y2 = 4.0 * (1.0 - x) / (1.0 + x);
        const double rho_inv = std::pow(1.0 + 0.25 * y2, m);
        return rho_inv * std::pow(mu, m) * std::pow(mu * mu + cinv * y2, -m);
    };
    StereographicBubble out{SpectralRadialField::from_polar(grid, closed), closed, 0.0, false};
    double tail = 0.0, total = 0.0;
    const int L = grid->truncation();
    for (int ell = 0; ell <= L; ++ell) {
        const double c2 = out.field.coef[static_cast<std::size_t>(ell)] *
                          out.field.coef[static_cast<std::size_t>(ell)];
        total += c2;
        if (ell > (9 * L) / 10) tail += c2;
    }
    out.aliasing_estimate = std::sqrt(tail / std::max(total, 1e-300));
    out.resolution_warning = out.aliasing_estimate > 1e-8;
    return out;
}

SolveResult solve_subcritical(const GjmsSphereSpec& spec, double p,
                              const std::function<double(double)>& f_of_cos,
                              const SpectralRadialField& init, const SolveOptions& opt) {
    if (!(p > 2)) throw std::invalid_argument("solve_subcritical: p > 2 required");
    const auto grid = init.grid;
    const int L = grid->truncation();
    const int nn = grid->node_count();
    const double crit = spec.dim.crit_exp().get_d();

    std::vector<double> fn(static_cast<std::size_t>(nn));
    for (int j = 0; j < nn; ++j) {
        fn[static_cast<std::size_t>(j)] = f_of_cos(grid->nodes()[static_cast<std::size_t>(j)]);
        if (!(fn[static_cast<std::size_t>(j)] > 0))
            throw std::invalid_argument("solve_subcritical: f must be positive");
    }
    std::vector<double> fpow(static_cast<std::size_t>(nn));
    for (int j = 0; j < nn; ++j)
        fpow[static_cast<std::size_t>(j)] = std::pow(fn[static_cast<std::size_t>(j)], p - crit);

    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(init.coef.data(), L + 1);
    Eigen::MatrixXd analysis(L + 1, nn), synthesis(nn, L + 1);
    for (int ell = 0; ell <= L; ++ell)
        for (int j = 0; j < nn; ++j) {
            analysis(ell, j) = grid->weights()[static_cast<std::size_t>(j)] * grid->basis(ell, j);
            synthesis(j, ell) = grid->basis(ell, j);
        }
    Eigen::VectorXd mult(L + 1);
    for (int ell = 0; ell <= L; ++ell) mult(ell) = gjms_multiplier(spec, ell).get_d();

    auto residual = [&](const Eigen::VectorXd& coef) {
        Eigen::VectorXd nodal = synthesis * coef;
        Eigen::VectorXd g(nn);
        for (int j = 0; j < nn; ++j) {
            const double u = nodal(j);
            g(j) = fpow[static_cast<std::size_t>(j)] *
                   std::copysign(std::pow(std::abs(u), p - 1.0), u);
        }
        Eigen::VectorXd r = mult.cwiseProduct(coef) - analysis * g;
        return std::pair{r, nodal};
    };

    auto [r, nodal] = residual(a);
    double rnorm = r.norm();
    const double scale = std::max(1.0, (analysis * Eigen::VectorXd::Ones(nn)).norm());
    int iterations = 0;
    while (rnorm > opt.tol * scale) {
        if (iterations >= opt.max_iterations)
            throw std::runtime_error("solve_subcritical: Newton did not converge, residual " +
                                     std::to_string(rnorm));
        Eigen::VectorXd dg(nn);
        for (int j = 0; j < nn; ++j)
            dg(j) = fpow[static_cast<std::size_t>(j)] * (p - 1.0) *
                    std::pow(std::abs(nodal(j)), p - 2.0);
        Eigen::MatrixXd jac = Eigen::MatrixXd(mult.asDiagonal());
        jac.noalias() -= analysis * dg.asDiagonal() * synthesis;
        Eigen::VectorXd step = jac.partialPivLu().solve(r);

        double lambda = 1.0;
        int halvings = 0;
        while (true) {
            Eigen::VectorXd trial = a - lambda * step;
            auto [rt, nt] = residual(trial);
            if (rt.norm() < rnorm || halvings >= opt.max_halvings) {
                a = trial;
                r = rt;
                nodal = nt;
                rnorm = rt.norm();
                break;
            }
            lambda *= 0.5;
            ++halvings;
        }
        ++iterations;
    }

    for (int j = 0; j < nn; ++j)
        if (!(nodal(j) > 0.0)) throw PositivityError(j, grid->nodes()[static_cast<std::size_t>(j)]);

    SolveResult out{SpectralRadialField{grid, std::vector<double>(a.data(), a.data() + L + 1)},
                    iterations, rnorm};
    return out;
}

BlowupDiagnostics blowup_diagnostics(const GjmsSphereSpec& spec, const SpectralRadialField& u,
                                     double p, double epsilon) {
    const Dimension& dim = spec.dim;
    const int n = dim.n(), k = dim.k();
    const double m = (n - 2 * k) / 2.0;
    const double cinv = bubble_c_nk(dim).inverse().to_double();

    const double pole = u.at_pole();
    if (!(pole > 0)) throw std::invalid_argument("blowup_diagnostics: u(pole) must be positive");
    const double near = u.at_cos(u.grid->nodes().back());
    if (near > pole * (1.0 + 1e-9))
        throw std::invalid_argument("blowup_diagnostics: pole is not a local maximum");

    BlowupDiagnostics out;
    out.epsilon = epsilon;
    out.mu = std::pow(pole, -(p - 2.0) / (2.0 * k));

    // conformal chart y = 2 tan(theta/2); w(y) = (1+y^2/4)^{-m} u
    auto w_of_y = [&](double y) {
        const double t2 = 0.25 * y * y;
        const double x = (1.0 - t2) / (1.0 + t2);
        return std::pow(1.0 + t2, -m) * u.at_cos(x);
    };
    auto bubble_cmp = [&](double y) {
        return std::pow(out.mu, n - 2 * k - 2.0 * k / (p - 2.0)) *
               std::pow(out.mu * out.mu + cinv * y * y, -m);
    };

    // radius of influence: largest chart radius with |w - B| <= eps B
    const double x_last = u.grid->nodes().front();  // closest node to the south pole
    out.domain_radius = 2.0 * std::sqrt((1.0 - x_last) / (1.0 + x_last));
    const int nscan = 4096;
    out.radius_of_influence = out.domain_radius;
    for (int i = 1; i <= nscan; ++i) {
        const double y = out.domain_radius * i / nscan;
        const double b = bubble_cmp(y);
        if (std::abs(w_of_y(y) - b) > epsilon * b) {
            out.radius_of_influence = out.domain_radius * (i - 1) / nscan;
            break;
        }
    }

    // profile distance: rescaled chart profile against the flat bubble
    const double resc = std::pow(out.mu, 2.0 * k / (p - 2.0));
    const int npts = 800;
    double sup = 0.0;
    for (int i = 0; i <= npts; ++i) {
        const double s = 10.0 * i / npts;
        const double prof = resc * w_of_y(out.mu * s);
        const double flat = std::pow(1.0 + cinv * s * s, -m);
        sup = std::max(sup, std::abs(prof - flat));
    }
    out.profile_distance = sup;
    return out;
}

}  // namespace polylab
