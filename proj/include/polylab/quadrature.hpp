#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Dense>

#include "polylab/dimension.hpp"

namespace polylab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a,b].
template <class F>
QuadResult integrate(F&& f, double a, double b, double tol = 1e-12, unsigned max_depth = 15) {
    QuadResult r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, max_depth, tol, &r.error);
    return r;
}

/// Gauss nodes/weights on [-1,1] for the weight (1-x^2)^alpha, alpha > -1,
/// by Golub-Welsch on the symmetric Jacobi recurrence.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline GaussRule gauss_gegenbauer(int npts, double alpha) {
    if (npts < 1) throw std::invalid_argument("gauss_gegenbauer: npts >= 1");
    // beta_0 = int (1-x^2)^alpha dx = 2^(2a+1) G(a+1)^2 / G(2a+2)
    const double beta0 =
        std::exp((2 * alpha + 1) * std::numbers::ln2 + 2 * std::lgamma(alpha + 1) - std::lgamma(2 * alpha + 2));
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
    for (int j = 1; j < npts; ++j) {
        const double bj = j * (j + 2 * alpha) / ((2 * j + 2 * alpha + 1) * (2 * j + 2 * alpha - 1));
        J(j - 1, j) = J(j, j - 1) = std::sqrt(bj);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    rule.x.resize(npts);
    rule.w.resize(npts);
    for (int i = 0; i < npts; ++i) {
        rule.x[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.w[i] = beta0 * v0 * v0;
    }
    return rule;
}

/// Quadrature rule on the unit (n-1)-sphere. The axisymmetric variant holds
/// Gauss-Gegenbauer nodes in the polar angle with the azimuthal measure
/// folded into the weights; the full variant is a product rule over all
/// spherical angles (uniform azimuth). Weights are positive and sum to
/// omega_{n-1}.
class SphericalQuadrature {
public:
    /// Axisymmetric rule: nodes are polar cosines t_i, integrating
    /// f(t) over the sphere as sum w_i f(t_i).
    static SphericalQuadrature axisymmetric(const Dimension& dim, int order) {
        SphericalQuadrature q;
        q.n_ = dim.n();
        q.degree_ = 2 * order - 1;
        GaussRule g = gauss_gegenbauer(order, (dim.n() - 3) / 2.0);
        const double om_eq = Dimension::unit_sphere_area(dim.n() - 1).to_double();
        q.nodes_.resize(g.x.size());
        q.weights_.resize(g.x.size());
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            q.nodes_[i] = {g.x[i]};
            q.weights_[i] = om_eq * g.w[i];
        }
        return q;
    }

    /// Full product rule with points on S^{n-1} in ambient coordinates.
    /// Node count grows as order^(n-2) * (2*order); intended for n <= 6.
    static SphericalQuadrature full_product(const Dimension& dim, int order) {
        SphericalQuadrature q;
        q.n_ = dim.n();
        q.degree_ = 2 * order - 1;
        const int n = dim.n();
        std::vector<GaussRule> polar(static_cast<std::size_t>(n - 2));
        for (int j = 0; j < n - 2; ++j)
            polar[static_cast<std::size_t>(j)] = gauss_gegenbauer(order, (n - 3 - j) / 2.0);
        const int naz = 2 * order;
        std::vector<double> pt(static_cast<std::size_t>(n));
        std::function<void(int, double)> rec = [&](int level, double wacc) {
            if (level == n - 2) {
                // azimuthal angle: uniform rule on [0, 2pi)
                double s = 1.0;
                for (int j = 0; j < n - 2; ++j) {
                    // sin of polar angle j accumulated below via sqrt(1-x^2)
                    s *= 1.0;
                }
                (void)s;
                for (int a = 0; a < naz; ++a) {
                    const double phi = 2.0 * std::numbers::pi * (a + 0.5) / naz;
                    double radial = 1.0;
                    std::vector<double> full(static_cast<std::size_t>(n));
                    for (int j = 0; j < n - 2; ++j) {
                        full[static_cast<std::size_t>(j)] = radial * pt[static_cast<std::size_t>(j)];
                        radial *= std::sqrt(std::max(0.0, 1.0 - pt[static_cast<std::size_t>(j)] *
                                                                 pt[static_cast<std::size_t>(j)]));
                    }
                    full[static_cast<std::size_t>(n - 2)] = radial * std::cos(phi);
                    full[static_cast<std::size_t>(n - 1)] = radial * std::sin(phi);
                    q.nodes_.push_back(full);
                    q.weights_.push_back(wacc * 2.0 * std::numbers::pi / naz);
                }
                return;
            }
            const GaussRule& g = polar[static_cast<std::size_t>(level)];
            for (std::size_t i = 0; i < g.x.size(); ++i) {
                pt[static_cast<std::size_t>(level)] = g.x[i];
                rec(level + 1, wacc * g.w[i]);
            }
        };
        rec(0, 1.0);
        return q;
    }

    int dimension_n() const { return n_; }
    int degree() const { return degree_; }
    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<std::vector<double>>& nodes() const { return nodes_; }

    double weight_sum() const {
        double s = 0.0;
        for (double w : weights_) s += w;
        return s;
    }

    /// Integrate an axisymmetric integrand given as f(cos theta).
    double integrate_polar(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * f(nodes_[i][0]);
        return s;
    }

    /// Integrate a general integrand on ambient unit vectors (full rule only).
    double integrate(const std::function<double(const std::vector<double>&)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * f(nodes_[i]);
        return s;
    }

private:
    int n_ = 0;
    int degree_ = 0;
    std::vector<std::vector<double>> nodes_;
    std::vector<double> weights_;
};

}  // namespace polylab
