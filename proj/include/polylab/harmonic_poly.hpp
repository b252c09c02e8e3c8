#pragma once

#include <map>
#include <string>
#include <vector>

#include "polylab/dimension.hpp"
#include "polylab/scalar.hpp"

namespace polylab {

/// Homogeneous polynomial on R^n with exact rational coefficients, stored as
/// a sparse lexicographically ordered map from exponent multi-indices to
/// coefficients. The zero polynomial has an empty map and degree -1 by
/// convention when constructed empty.
class HomPoly {
public:
    using MultiIndex = std::vector<int>;

    HomPoly() : n_(0), degree_(-1) {}
    HomPoly(int n, int degree) : n_(n), degree_(degree) {}

    static HomPoly constant(int n, const Rational& c) {
        HomPoly p(n, 0);
        if (c != 0) p.coeffs_[MultiIndex(static_cast<std::size_t>(n), 0)] = c;
        return p;
    }
    /// x_i as a degree-1 polynomial.
    static HomPoly coordinate(int n, int i);
    /// r^2 = sum x_i^2.
    static HomPoly radius_squared(int n);
    static HomPoly monomial(int n, const MultiIndex& alpha, const Rational& c);

    int n() const { return n_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t term_count() const { return coeffs_.size(); }
    const std::map<MultiIndex, Rational>& coefficients() const { return coeffs_; }

    void set(const MultiIndex& alpha, const Rational& c);
    Rational coefficient(const MultiIndex& alpha) const;

    HomPoly& operator+=(const HomPoly& o);
    HomPoly& operator-=(const HomPoly& o);
    HomPoly operator-() const;
    friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
    friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
    friend HomPoly operator*(const Rational& s, HomPoly p);
    friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
    friend bool operator==(const HomPoly& a, const HomPoly& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

    /// Nonnegative Euclidean Laplacian Delta_0 = -sum d_ii; degree drops by 2.
    HomPoly laplacian() const;
    bool is_harmonic() const { return laplacian().is_zero(); }

    /// d/dx_i; degree drops by 1.
    HomPoly partial(int i) const;

    Rational eval(const std::vector<Rational>& x) const;
    double eval(const std::vector<double>& x) const;

    std::string str() const;

private:
    int n_;
    int degree_;
    std::map<MultiIndex, Rational> coeffs_;
};

/// psi = sum_p r^{2p} h_p with each h_p exactly harmonic of degree l-2p.
struct HarmonicDecomposition {
    int n = 0;
    int degree = -1;
    std::vector<std::pair<int, HomPoly>> components;  // (p, h_p), h_p may be zero

    HomPoly recombine() const;
};

/// Exact harmonic decomposition via the eigenstructure of r^2 Delta_0 on P_l
/// (eigenvalue -2p(n-2+2l-2p) on r^{2p} H_{l-2p}).
HarmonicDecomposition decompose(const HomPoly& psi);

/// Delta_0^j (r^q psi) = r^{exponent} * (poly restricted to the unit sphere)
///                     = r^{exponent - deg} * poly(x).
struct WeightedLaplacian {
    Rational exponent;  // q + l - 2j
    HomPoly poly;       // degree l
};
WeightedLaplacian weighted_power_laplacian(const Rational& q, const HomPoly& psi, int j,
                                           const Dimension& dim);

/// The unique psi in P_l with Delta_0^k (r^q psi) = r^{q-2k} T, solved
/// diagonally on the harmonic decomposition. Throws std::domain_error naming
/// the offending (p, l') when an eigenvalue factor vanishes.
HomPoly invert_weighted(const Rational& q, const HomPoly& T, const Dimension& dim);

/// Exact value of the integral of psi over the unit sphere S^{n-1}, returned
/// as the rational multiple of omega_{n-1}.
Rational sphere_average(const HomPoly& psi);

inline Scalar sphere_average_scalar(const HomPoly& psi) {
    return Scalar(sphere_average(psi)) * Dimension::unit_sphere_area(psi.n());
}

/// Symmetric n x n rational matrix.
using SymMatrix = std::vector<std::vector<Rational>>;

struct GreenCorrection {
    HomPoly psi4;
    HomPoly psi5;
    bool trace_consistent = true;  // trace of the quadratic form vanished
};

/// Builds the degree-4 and degree-5 corrections of the local expansion model:
/// solves Delta_0^k (r^{2k-n} psi4) = r^{-n} T1 with
/// T1 = r^2 [c2 S_hess + c3 ric_lap]_{ab} x^a x^b, and the same with
/// T2 = R5. Asserts mean-zero whenever the quadratic form is trace-free.
GreenCorrection green_correction_pipeline(const SymMatrix& S_hess, const SymMatrix& ric_lap,
                                          const HomPoly& R5, const Dimension& dim,
                                          const Rational& c2 = Rational(1),
                                          const Rational& c3 = Rational(1));

}  // namespace polylab
