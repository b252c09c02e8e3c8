#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polylab/dimension.hpp"
#include "polylab/parallel.hpp"

namespace polylab {

/// Parameters of the ball convolution integral
///   I = int_{B(0,rho)} (1+|z|)^{q-n} |xi - z|^{p-n} dz,  |xi| = xi_norm.
struct GiraudParams {
    int n = 3;
    int p = 1;
    int q = 0;
    double rho = 1.0;
    double xi_norm = 0.0;

    enum class Regime { LargePQ, CriticalPQ, PosQ, ZeroQ, NegQ };

    void validate() const;

    /// Total and exclusive classification of the five asymptotic regimes.
    Regime regime() const {
        if (n < p + q) return Regime::LargePQ;
        if (n == p + q) return Regime::CriticalPQ;
        if (q > 0) return Regime::PosQ;
        if (q == 0) return Regime::ZeroQ;
        return Regime::NegQ;
    }

    /// The matching branch of the asymptotic envelope.
    double envelope() const;
};

struct GiraudValue {
    double value = 0.0;
    double error = 0.0;
};

/// Axisymmetric 2D reduction with the singular ball around xi split off and
/// flattened by the substitution s = |z - xi|^p.
GiraudValue giraud_integral(const GiraudParams& params);

struct EnvelopeRow {
    double rho = 0.0;
    double xi_norm = 0.0;
    double value = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
};

struct EnvelopeSweep {
    std::vector<EnvelopeRow> rows;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

/// Ratio of the computed integral to the matching envelope branch over a
/// (rho, |xi|/rho) grid; points are evaluated concurrently.
EnvelopeSweep envelope_ratio_sweep(int n, int p, int q, std::span<const double> rhos,
                                   std::span<const double> xi_fractions,
                                   par::Policy pol = par::default_policy());

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Plain Monte-Carlo estimate over the ball, deterministic for a fixed seed
/// independently of the thread count (per-chunk RNG streams).
MonteCarloEstimate giraud_monte_carlo(const GiraudParams& params, std::uint64_t nsamples,
                                      std::uint64_t seed, par::Policy pol = par::default_policy());

}  // namespace polylab
