#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "polylab/bubble.hpp"
#include "polylab/dimension.hpp"

namespace polylab {

/// GJMS data on the unit round n-sphere via the Einstein factorization:
/// shifts K_i = (n+2i-2)(n-2i)/4 and Q = 2/(n-2k) prod K_i, all exact.
struct GjmsSphereSpec {
    Dimension dim;
    std::vector<Rational> shift_constants;
    Rational q_constant;

    static GjmsSphereSpec make(const Dimension& dim) {
        GjmsSphereSpec s{dim, {}, Rational(1)};
        Rational prod(1);
        for (int i = 1; i <= dim.k(); ++i) {
            Rational ki = Rational((dim.n() + 2 * i - 2) * (dim.n() - 2 * i), 4);
            s.shift_constants.push_back(ki);
            prod *= ki;
        }
        s.q_constant = Rational(2, dim.n() - 2 * dim.k()) * prod;
        s.q_constant.canonicalize();
        return s;
    }

    /// prod K_i = P(1), the zeroth-order coefficient of the operator.
    Rational operator_on_constants() const {
        Rational prod(1);
        for (const auto& ki : shift_constants) prod *= ki;
        return prod;
    }
};

/// Multiplier of the operator on degree-ell zonal harmonics:
/// prod_i (lambda_ell + K_i) with lambda_ell = ell(ell+n-1).
Rational gjms_multiplier(const GjmsSphereSpec& spec, long ell);

inline Rational q_curvature_constant(const GjmsSphereSpec& spec) { return spec.q_constant; }

/// Gauss grid and orthonormal zonal basis for truncation L on S^n:
/// 2L nodes of the (1-x^2)^{(n-2)/2} Gauss rule, basis values, and the
/// analysis/synthesis maps (exact on band-limited data up to the rule degree).
class SphereGrid {
public:
    SphereGrid(const Dimension& dim, int L);

    const Dimension& dim() const { return dim_; }
    int truncation() const { return L_; }
    int node_count() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }
    double basis(int ell, int node) const {
        return basis_[static_cast<std::size_t>(ell)][static_cast<std::size_t>(node)];
    }
    /// Orthonormal basis value at arbitrary x = cos(theta), by recurrence.
    double basis_at(int ell, double x) const;

    std::vector<double> analyze(std::span<const double> nodal) const;
    std::vector<double> synthesize(std::span<const double> coef) const;
    double synthesize_at(std::span<const double> coef, double x) const;

private:
    Dimension dim_;
    int L_;
    double beta0_;
    std::vector<double> sqrt_beta_;  // sqrt(beta_j), j = 1..L
    std::vector<double> x_, w_;
    std::vector<std::vector<double>> basis_;  // [ell][node]
};

std::shared_ptr<const SphereGrid> make_sphere_grid(const Dimension& dim, int L);

/// Zonal coefficients of a rotationally symmetric function about the pole.
struct SpectralRadialField {
    std::shared_ptr<const SphereGrid> grid;
    std::vector<double> coef;  // a_0 .. a_L

    static SpectralRadialField constant(std::shared_ptr<const SphereGrid> grid, double value);
    static SpectralRadialField from_polar(std::shared_ptr<const SphereGrid> grid,
                                          const std::function<double(double)>& f_of_cos);

    double at_cos(double x) const { return grid->synthesize_at(coef, x); }
    double at_pole() const { return at_cos(1.0); }
    std::vector<double> nodal() const { return grid->synthesize(coef); }
    double norm() const;
};

/// Coefficientwise action a_ell -> multiplier(ell) a_ell.
SpectralRadialField apply_gjms(const GjmsSphereSpec& spec, const SpectralRadialField& field);

struct StereographicBubble {
    SpectralRadialField field;
    std::function<double(double)> closed_form;  // of cos(theta)
    double aliasing_estimate = 0.0;
    bool resolution_warning = false;
};

/// The exact solution u = rho^{-1} (U_mu o chart) of P u = u^{2*-1} on the
/// sphere, normalized so u(pole) = mu^{-(n-2k)/2}; spectral coefficients plus
/// the closed-form evaluator and a truncation-aliasing estimate.
StereographicBubble stereographic_bubble(const GjmsSphereSpec& spec, double mu,
                                         std::shared_ptr<const SphereGrid> grid);

struct SolveOptions {
    double tol = 1e-10;
    int max_iterations = 60;
    int max_halvings = 30;
};

struct SolveResult {
    SpectralRadialField solution;
    int iterations = 0;
    double residual_norm = 0.0;
};

/// Loss of positivity at acceptance, reported with the first offending node.
struct PositivityError : std::runtime_error {
    int node;
    double x;
    PositivityError(int node_, double x_)
        : std::runtime_error("solve_subcritical: solution not positive at node " +
                             std::to_string(node_) + " (cos theta = " + std::to_string(x_) + ")"),
          node(node_),
          x(x_) {}
};

/// Newton iteration on zonal coefficients for P u = f^{p-2*} u^{p-1}, the
/// nonlinearity evaluated on the Gauss grid (2L nodes, 3/2-rule oversampled).
SolveResult solve_subcritical(const GjmsSphereSpec& spec, double p,
                              const std::function<double(double)>& f_of_cos,
                              const SpectralRadialField& init, const SolveOptions& opt = {});

struct BlowupDiagnostics {
    double mu = 0.0;
    double radius_of_influence = 0.0;
    double domain_radius = 0.0;
    double epsilon = 0.0;
    double profile_distance = 0.0;
};

/// Concentration diagnostics in the det-1 conformal chart y = 2 tan(theta/2)
/// (the flat chart of the round metric, in which the comparison bubble with
/// chart distance pulls back to the flat bubble exactly): mu from the pole
/// value, the epsilon-tube radius of influence against the comparison
/// bubble, and the sup distance of the mu-rescaled profile to U on |x| <= 10.
BlowupDiagnostics blowup_diagnostics(const GjmsSphereSpec& spec, const SpectralRadialField& u,
                                     double p, double epsilon);

}  // namespace polylab
