#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "polylab/dimension.hpp"
#include "polylab/harmonic_poly.hpp"
#include "polylab/jet.hpp"
#include "polylab/radial.hpp"

namespace polylab {

/// Radial factor of a field block, queried as a Taylor jet at a radius.
template <class T>
using RadialFn = std::function<Jet<T>(const T& r, int order)>;

template <class T>
RadialFn<T> radial_one() {
    return [](const T&, int order) { return Jet<T>::constant(T(1), order); };
}

/// r^s with integer s, exact for rational T.
template <class T>
RadialFn<T> radial_power(T coef, long s) {
    return [coef, s](const T& r, int order) {
        return coef * Jet<T>::variable(r, order).pow_int(s);
    };
}

inline RadialFn<double> radial_closed_form(const ClosedFormRadial& f) {
    return [f](const double& r, int order) { return f.jet(r, order); };
}

/// Radial factor supplied only as a point evaluator: derivatives by central
/// finite differences with step h = max(r,1) * h_rel. The error model is
/// O(h^2) per derivative order; intended for desk tolerances only.
RadialFn<double> radial_from_samples(std::function<double(double)> f, double h_rel = 1e-4);

/// A smooth field represented as a finite sum  sum_b g_b(r) h_b(x)  with each
/// h_b a solid harmonic (exactly harmonic homogeneous polynomial; the
/// constant 1 for radial parts). Closed under Delta_0, d/dr and x.grad,
/// which act block by block; surface integrals over spheres reduce to exact
/// harmonic Gram integrals times radial jet data.
template <class T>
class BlockField {
public:
    struct Block {
        HomPoly h;       // solid harmonic, degree l >= 0 (constant(n,1) for radial)
        int l = 0;
        RadialFn<T> g;   // block value = g(r) * h(x)
    };

    explicit BlockField(const Dimension& dim) : dim_(dim) {}

    const Dimension& dim() const { return dim_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    void add_radial(RadialFn<T> g) {
        blocks_.push_back(Block{HomPoly::constant(dim_.n(), 1), 0, std::move(g)});
    }

    void add_harmonic_block(HomPoly solid_harmonic, RadialFn<T> g) {
        if (!solid_harmonic.laplacian().is_zero())
            throw std::invalid_argument("BlockField: block polynomial must be harmonic");
        const int l = solid_harmonic.degree() < 0 ? 0 : solid_harmonic.degree();
        blocks_.push_back(Block{std::move(solid_harmonic), l, std::move(g)});
    }

    /// g(r) * psi(x) for a general homogeneous psi: harmonic components are
    /// split off exactly, each absorbing its r^{2p} factor into the radial part.
    void add_poly_times_radial(const HomPoly& psi, RadialFn<T> g) {
        if (psi.is_zero()) return;
        HarmonicDecomposition dec = decompose(psi);
        for (auto& [p, h] : dec.components) {
            if (h.is_zero()) continue;
            RadialFn<T> shifted =
                p == 0 ? g : [g, p = p](const T& r, int order) {
                      return (g(r, order) * Jet<T>::variable(r, order).pow_int(2 * p))
                          .truncated(order);
                  };
            blocks_.push_back(Block{h, h.degree(), std::move(shifted)});
        }
    }

    /// Value at the origin: only degree-0 blocks contribute.
    T value_at_origin() const {
        T acc(0);
        for (const auto& b : blocks_) {
            if (b.l != 0) continue;
            Rational c = b.h.coefficient(HomPoly::MultiIndex(static_cast<std::size_t>(dim_.n()), 0));
            if constexpr (std::is_same_v<T, double>)
                acc += b.g(T(0), 0).value() * c.get_d();
            else
                acc += b.g(T(0), 0).value() * T(c);
        }
        return acc;
    }

    /// Pointwise value at x (double fields only).
    double eval_point(const std::vector<double>& x) const
        requires std::same_as<T, double>
    {
        double r2 = 0.0;
        for (double xi : x) r2 += xi * xi;
        const double r = std::sqrt(r2);
        double acc = 0.0;
        for (const auto& b : blocks_) acc += b.g(r, 0).value() * b.h.eval(x);
        return acc;
    }

private:
    Dimension dim_;
    std::vector<Block> blocks_;
};

}  // namespace polylab
