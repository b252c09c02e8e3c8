#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "polylab/field.hpp"
#include "polylab/quadrature.hpp"

namespace polylab {

/// How surface integrals over spheres are evaluated: exact harmonic Gram
/// reduction (angular part exact, radial part from jets) or node-based
/// spherical quadrature. Chosen explicitly by the caller, never sniffed.
enum class SurfacePath { ExactGram, Quadrature };

/// Term-list evaluator for the boundary functional P_k(r;u) and its
/// polarized bilinear form. Every term is a weighted surface integral of a
/// product of two field quantities drawn from
///   { Delta^i u, d_nu Delta^i u, Delta^i(x.grad u), d_nu Delta^i(x.grad u),
///     x.grad Delta^m u, d_nu(x.grad Delta^m u) },
/// where for radial-sphere data the quantities reduce to per-block radial
/// jet values. The k-even branch closes with (r/2) (Delta^{k/2} u)^2; the
/// k-odd branch with (r/2) Delta^{(k+1)/2}u Delta^{(k-1)/2}u plus the
/// antisymmetric x.grad bracket of Delta^{(k-1)/2}u.
template <class T>
class PohozaevTerms {
public:
    struct FieldData {
        std::vector<std::vector<T>> du_val, du_der;    // [i in 0..k][block]
        std::vector<std::vector<T>> dxu_val, dxu_der;  // [i in 0..floor(k/2)][block]
        std::vector<T> xdu_val, xdu_der;               // odd k: x.grad Delta^m u
    };

    PohozaevTerms(const Dimension& dim, const T& r) : dim_(dim), r_(r) {
        const int n = dim.n(), k = dim.k();
        const Rational half_gap(n - 2 * k, 2);
        for (int i = 0; i <= k / 2 - 1; ++i) {
            terms_.push_back({Quantity::DuDer, i, Quantity::DuVal, k - 1 - i, from_rat(half_gap)});
            terms_.push_back({Quantity::DuVal, i, Quantity::DuDer, k - 1 - i, from_rat(-half_gap)});
            terms_.push_back({Quantity::DxuDer, i, Quantity::DuVal, k - 1 - i, T(1)});
            terms_.push_back({Quantity::DxuVal, i, Quantity::DuDer, k - 1 - i, T(-1)});
        }
        if (k % 2 == 0) {
            terms_.push_back({Quantity::DuVal, k / 2, Quantity::DuVal, k / 2, r_ / T(2)});
        } else {
            const int m = (k - 1) / 2;
            terms_.push_back({Quantity::DuVal, m + 1, Quantity::DuVal, m, r_ / T(2)});
            terms_.push_back({Quantity::DuVal, m, Quantity::XduDer, 0, from_rat(Rational(1, 2))});
            terms_.push_back({Quantity::XduVal, 0, Quantity::DuDer, m, from_rat(Rational(-1, 2))});
        }
    }

    /// Per-block jet tables of all quantities at radius r.
    FieldData analyze(const BlockField<T>& u) const {
        const int n = dim_.n(), k = dim_.k();
        const int M = 2 * k + 2;
        FieldData d;
        const std::size_t nb = u.blocks().size();
        d.du_val.assign(static_cast<std::size_t>(k) + 1, std::vector<T>(nb, T(0)));
        d.du_der = d.du_val;
        d.dxu_val.assign(static_cast<std::size_t>(k / 2) + 1, std::vector<T>(nb, T(0)));
        d.dxu_der = d.dxu_val;
        d.xdu_val.assign(nb, T(0));
        d.xdu_der.assign(nb, T(0));

        Jet<T> var = Jet<T>::variable(r_, M);
        Jet<T> inv_r = var.reciprocal();
        Jet<T> inv_r2 = inv_r * inv_r;
        auto lap = [&](const Jet<T>& a, const T& lam) {
            Jet<T> d1 = a.differentiate();
            Jet<T> d2 = d1.differentiate();
            int target = d2.order();
            return (-(d2) - T(n - 1) * (d1 * inv_r).truncated(target) +
                    lam * (a * inv_r2).truncated(target));
        };

        for (std::size_t b = 0; b < nb; ++b) {
            const auto& blk = u.blocks()[b];
            const T lam = T(blk.l) * T(blk.l + n - 2);
            Jet<T> a = (blk.g(r_, M) * var.pow_int(blk.l)).truncated(M);
            std::vector<Jet<T>> chain;
            chain.push_back(a);
            for (int i = 1; i <= k; ++i) chain.push_back(lap(chain.back(), lam));
            for (int i = 0; i <= k; ++i) {
                d.du_val[static_cast<std::size_t>(i)][b] = chain[static_cast<std::size_t>(i)].value();
                d.du_der[static_cast<std::size_t>(i)][b] =
                    chain[static_cast<std::size_t>(i)].derivative(1);
            }
            Jet<T> xg = (var * a.differentiate()).truncated(M - 1);
            std::vector<Jet<T>> xchain;
            xchain.push_back(xg);
            for (int i = 1; i <= k / 2; ++i) xchain.push_back(lap(xchain.back(), lam));
            for (int i = 0; i <= k / 2; ++i) {
                d.dxu_val[static_cast<std::size_t>(i)][b] = xchain[static_cast<std::size_t>(i)].value();
                d.dxu_der[static_cast<std::size_t>(i)][b] =
                    xchain[static_cast<std::size_t>(i)].derivative(1);
            }
            if (k % 2 == 1) {
                const int m = (k - 1) / 2;
                Jet<T> xd = (var * chain[static_cast<std::size_t>(m)].differentiate())
                                .truncated(M - 2 * m - 1);
                d.xdu_val[b] = xd.value();
                d.xdu_der[b] = xd.derivative(1);
            }
        }
        return d;
    }

    /// P_k(r;u) divided by omega_{n-1}: r^{n-1} sum_t w_t <Q1, Gram Q2>.
    /// gram(b,c) is the unit-sphere pairing of block b of U with block c of U.
    T quadratic_reduced(const FieldData& U,
                        const std::function<T(std::size_t, std::size_t)>& gram) const {
        T acc(0);
        for (const auto& t : terms_) acc += t.weight * pair(U, t.q1, t.i1, U, t.q2, t.i2, gram);
        return acc * radius_factor();
    }

    /// Phi_{k,r}(u,v)/omega_{n-1}: the exact polarization, so that the
    /// diagonal reproduces quadratic_reduced and the form is symmetric.
    T bilinear_reduced(const FieldData& U, const FieldData& V,
                       const std::function<T(std::size_t, std::size_t)>& gram_uv) const {
        auto gram_vu = [&gram_uv](std::size_t b, std::size_t c) { return gram_uv(c, b); };
        T acc(0);
        for (const auto& t : terms_) {
            acc += t.weight * pair(U, t.q1, t.i1, V, t.q2, t.i2, gram_uv);
            acc += t.weight * pair(V, t.q1, t.i1, U, t.q2, t.i2, gram_vu);
        }
        return acc / T(2) * radius_factor();
    }

private:
    enum class Quantity { DuVal, DuDer, DxuVal, DxuDer, XduVal, XduDer };
    struct Term {
        Quantity q1;
        int i1;
        Quantity q2;
        int i2;
        T weight;
    };

    static T from_rat(const Rational& q) {
        if constexpr (std::is_same_v<T, double>)
            return q.get_d();
        else
            return T(q);
    }

    T radius_factor() const {
        T f(1);
        for (int i = 0; i < dim_.n() - 1; ++i) f *= r_;
        return f;
    }

    static const std::vector<T>& select(const FieldData& d, Quantity q, int i) {
        switch (q) {
            case Quantity::DuVal: return d.du_val[static_cast<std::size_t>(i)];
            case Quantity::DuDer: return d.du_der[static_cast<std::size_t>(i)];
            case Quantity::DxuVal: return d.dxu_val[static_cast<std::size_t>(i)];
            case Quantity::DxuDer: return d.dxu_der[static_cast<std::size_t>(i)];
            case Quantity::XduVal: return d.xdu_val;
            case Quantity::XduDer: return d.xdu_der;
        }
        throw std::logic_error("unreachable");
    }

    T pair(const FieldData& A, Quantity qa, int ia, const FieldData& B, Quantity qb, int ib,
           const std::function<T(std::size_t, std::size_t)>& gram) const {
        const std::vector<T>& va = select(A, qa, ia);
        const std::vector<T>& vb = select(B, qb, ib);
        T acc(0);
        for (std::size_t b = 0; b < va.size(); ++b) {
            if (va[b] == T(0)) continue;
            for (std::size_t c = 0; c < vb.size(); ++c) {
                if (vb[c] == T(0)) continue;
                T g = gram(b, c);
                if (g == T(0)) continue;
                acc += va[b] * vb[c] * g;
            }
        }
        return acc;
    }

    Dimension dim_;
    T r_;
    std::vector<Term> terms_;
};

/// Unit-sphere Gram matrix of the harmonic block polynomials of two fields,
/// as exact rational multiples of omega_{n-1}.
template <class TA, class TB>
std::vector<std::vector<Rational>> block_gram(const BlockField<TA>& u, const BlockField<TB>& v) {
    std::vector<std::vector<Rational>> g(u.blocks().size(),
                                         std::vector<Rational>(v.blocks().size(), Rational(0)));
    for (std::size_t b = 0; b < u.blocks().size(); ++b)
        for (std::size_t c = 0; c < v.blocks().size(); ++c)
            g[b][c] = sphere_average(u.blocks()[b].h * v.blocks()[c].h);
    return g;
}

/// P_k(r;u), double precision.
double boundary_functional(const BlockField<double>& u, double r, const Dimension& dim,
                           SurfacePath path = SurfacePath::ExactGram, int quad_order = 24);

/// P_k(r;u) for exact fields at rational radius; result is rational x omega.
Scalar boundary_functional_exact(const BlockField<Rational>& u, const Rational& r,
                                 const Dimension& dim);

/// Phi_{k,r}(u,v): symmetric, with Phi(u,u) = P_k(r;u).
double bilinear_form(const BlockField<double>& u, const BlockField<double>& v, double r,
                     const Dimension& dim, SurfacePath path = SurfacePath::ExactGram,
                     int quad_order = 24);
Scalar bilinear_form_exact(const BlockField<Rational>& u, const BlockField<Rational>& v,
                           const Rational& r, const Dimension& dim);

/// Radial scalar coefficient with one derivative, for the f of the identity.
struct RadialScalarFn {
    std::function<double(double)> value;
    std::function<double(double)> deriv;

    static RadialScalarFn constant(double c) {
        return {[c](double) { return c; }, [](double) { return 0.0; }};
    }
};

/// Full annulus identity for a radial field u on B(0,r)\B(0,s):
/// boundary difference on the left, volume and surface terms on the right.
struct PohozaevReport {
    double r = 0.0, s = 0.0;
    double boundary_outer = 0.0, boundary_inner = 0.0;
    double error_term = 0.0;            // int (dilation u) E(u)
    double exponent_defect_term = 0.0;  // ((n-2k)/2 - n/p) int f |u|^p
    double grad_f_term = 0.0;           // -(1/p) int x.grad f |u|^p
    double surface_f_terms = 0.0;       // (r/p) int_dB_r f|u|^p - (s/p) int_dB_s f|u|^p
    double residual = 0.0;
    double quad_error_estimate = 0.0;
};

PohozaevReport identity_residual(const RadialFn<double>& u, const RadialScalarFn& f, double p,
                                 double s, double r, const Dimension& dim);

/// Theta(n,k) = omega_{n-1} 2^{k-2} (k-1)! (n-2)(n-2k) prod_{i=2}^k (n-2i),
/// the constant of the singular-mass limit (index interpretation fixed by the
/// quadrature oracle; the k = 1 chain degenerates to omega (n-2)^2 / 2).
Scalar theta_constant(const Dimension& dim);

/// Limit of a sequence sampled at radii halving each step with an O(r)
/// remainder: two Richardson levels, then the entry with the smallest
/// successive difference (the smallest radii can be cancellation-limited).
double richardson_limit(const std::vector<double>& values, double* error_out = nullptr);

struct SingularMassResult {
    double numeric_limit = 0.0;
    double closed_form = 0.0;  // Theta(n,k) * Lambda * H(0)
    double extrapolation_error = 0.0;
};

/// lim_{r->0} P_k(r; Lambda r^{2k-n} + H) by Richardson extrapolation over
/// radii 2^{-j}, j = 3..12, against the closed form.
SingularMassResult singular_mass_limit(double lambda, const BlockField<double>& H,
                                       const Dimension& dim);

}  // namespace polylab
