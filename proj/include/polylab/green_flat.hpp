#pragma once

#include "polylab/bubble.hpp"
#include "polylab/pohozaev.hpp"

namespace polylab {

/// Local model of a Green's function at a flat point:
///   G(x) = lambda r^{2k-n} (1 + psi4(x) + psi5(x)) + mass + h(x),
/// with mean-zero polynomial corrections and a smooth remainder h.
class GreenModel {
public:
    GreenModel(const Dimension& dim, double lambda, double mass, HomPoly psi4, HomPoly psi5,
               BlockField<double> remainder)
        : dim_(dim),
          lambda_(lambda),
          mass_(mass),
          psi4_(std::move(psi4)),
          psi5_(std::move(psi5)),
          remainder_(std::move(remainder)) {
        if (!psi4_.is_zero()) {
            if (psi4_.degree() != 4) throw std::invalid_argument("GreenModel: psi4 must have degree 4");
            if (sphere_average(psi4_) != 0)
                throw std::invalid_argument("GreenModel: psi4 must have zero sphere average");
        }
        if (!psi5_.is_zero()) {
            if (psi5_.degree() != 5) throw std::invalid_argument("GreenModel: psi5 must have degree 5");
            if (sphere_average(psi5_) != 0)
                throw std::invalid_argument("GreenModel: psi5 must have zero sphere average");
        }
    }

    static GreenModel plain(const Dimension& dim, double mass) {
        return GreenModel(dim, bubble_b_nk(dim).to_double(), mass, HomPoly(dim.n(), 4),
                          HomPoly(dim.n(), 5), BlockField<double>(dim));
    }

    const Dimension& dim() const { return dim_; }
    double lambda() const { return lambda_; }
    double mass() const { return mass_; }
    const HomPoly& psi4() const { return psi4_; }
    const HomPoly& psi5() const { return psi5_; }
    const BlockField<double>& remainder() const { return remainder_; }

    /// The model as a block field (for boundary functionals).
    BlockField<double> as_field() const;

    /// The purely radial part lambda r^{2k-n} + mass as a block field.
    BlockField<double> radial_part() const;

    /// The correction part lambda r^{2k-n} (psi4 + psi5) as a block field.
    BlockField<double> correction_part() const;

    double eval_point(const std::vector<double>& x) const;

private:
    Dimension dim_;
    double lambda_;
    double mass_;
    HomPoly psi4_, psi5_;
    BlockField<double> remainder_;
};

/// G_0 = b_{n,k} r^{2k-n}, exact.
inline ClosedFormRadial fundamental_solution(const Dimension& dim) {
    return ClosedFormRadial::power(bubble_b_nk(dim), 2 * dim.k() - dim.n());
}

/// Compactly supported radial test field: jets plus the support radius.
struct RadialTestField {
    RadialFn<double> jet;
    double support_radius = 1.0;

    /// Gaussian bump times the polynomial cutoff (1 - (r/R)^2)^{2k+2}.
    static RadialTestField bump(const Dimension& dim, double R);
};

/// | int G_0 Delta_0^k phi dx - phi(0) |, integrating in radial shells.
double dirac_check(const RadialTestField& phi, const Dimension& dim);

struct MassLimitResult {
    double numeric_limit = 0.0;
    double reference = 0.0;           // Theta(n,k) * lambda * (A + h(0))
    double psi_contribution = 0.0;    // bilinear pairing of radial and correction parts
    double extrapolation_error = 0.0;
};

/// lim_{r->0} P_k(r; G) for the model, checked against
/// c_{n,k} (A + h(0)) with c_{n,k} = Theta(n,k) b_{n,k} (the reduction of the
/// mass boundary term to the singular+harmonic limit). The mean-zero
/// polynomial corrections must not contribute; their bilinear pairing with
/// the radial part is returned and must vanish to tolerance.
MassLimitResult mass_limit(const GreenModel& model);

struct GreenBounds {
    double lower = 0.0;  // min over the grid of G r^{n-2k} / b
    double upper = 0.0;  // max over the grid of G r^{n-2k} / b
};

/// Two-sided comparison of the model against b_{n,k} r^{2k-n} on r <= r0.
GreenBounds green_bounds(const GreenModel& model, double r0, int radial_samples = 64);

}  // namespace polylab
