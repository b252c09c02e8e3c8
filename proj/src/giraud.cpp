#include "polylab/giraud.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "polylab/quadrature.hpp"

namespace polylab {

void GiraudParams::validate() const {
    if (n < 2) throw std::invalid_argument("giraud: n >= 2 required");
    if (p < 1 || p >= n) throw std::invalid_argument("giraud: 1 <= p < n required");
    if (q >= n) throw std::invalid_argument("giraud: q < n required");
    if (!(rho > 0)) throw std::invalid_argument("giraud: rho > 0 required");
    if (xi_norm < 0 || xi_norm >= rho)
        throw std::invalid_argument("giraud: 0 <= |xi| < rho required");
}

double GiraudParams::envelope() const {
    switch (regime()) {
        case Regime::LargePQ: return std::pow(rho, p + q - n);
        case Regime::CriticalPQ: return std::log(2.0 + rho);
        case Regime::PosQ: return std::pow(1.0 + xi_norm, p + q - n);
        case Regime::ZeroQ: return std::pow(1.0 + xi_norm, p - n) * std::log(2.0 + xi_norm);
        case Regime::NegQ: return std::pow(1.0 + xi_norm, p - n);
    }
    throw std::logic_error("unreachable");
}

namespace {

/// Adaptive integral over segments with per-segment error accumulation.
template <class F>
GiraudValue integrate_segments(F&& f, const std::vector<double>& breaks, double tol) {
    GiraudValue out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        QuadResult q = integrate(f, breaks[i], breaks[i + 1], tol);
        out.value += q.value;
        out.error += q.error;
    }
    return out;
}

}  // namespace

GiraudValue giraud_integral(const GiraudParams& params) {
    params.validate();
    const int n = params.n, p = params.p, q = params.q;
    const double rho = params.rho, t = params.xi_norm;
    const double om_eq = Dimension::unit_sphere_area(n - 1).to_double();  // omega_{n-2}

    if (t == 0.0) {
        // kernel collapses by radial symmetry
        auto f = [&](double s) { return std::pow(s, p - 1) * std::pow(1.0 + s, q - n); };
        GiraudValue r = integrate_segments(f, {0.0, 1.0, std::min(10.0, rho), rho}, 1e-11);
        const double om = Dimension::unit_sphere_area(n).to_double();
        return {om * r.value, om * r.error};
    }

    const double delta = std::min({1.0, t / 2.0, rho / 10.0, (rho - t) / 2.0});

    // kernel integrated against the polar angle of z about the origin, with
    // the theta-range outside the split ball B(xi, delta)
    auto angular_outer = [&](double s) {
        double theta_min = 0.0;
        if (std::abs(s - t) < delta) {
            const double c = (s * s + t * t - delta * delta) / (2.0 * s * t);
            theta_min = std::acos(std::clamp(c, -1.0, 1.0));
        }
        auto g = [&](double theta) {
            const double d2 = s * s + t * t - 2.0 * s * t * std::cos(theta);
            return std::pow(std::sin(theta), n - 2) * std::pow(d2, 0.5 * (p - n));
        };
        QuadResult r = integrate(g, theta_min, std::numbers::pi, 1e-11);
        return r.value;
    };
    auto outer_f = [&](double s) {
        return std::pow(s, n - 1) * std::pow(1.0 + s, q - n) * angular_outer(s);
    };
    std::vector<double> breaks{0.0};
    for (double b : {t - delta, t, t + delta, 1.0, 10.0, 100.0})
        if (b > 0.0 && b < rho) breaks.push_back(b);
    breaks.push_back(rho);
    std::sort(breaks.begin(), breaks.end());
    GiraudValue outer = integrate_segments(outer_f, breaks, 1e-9);

    // inner ball about xi, radial substitution s = w^p flattens the kernel
    auto angular_inner = [&](double w) {
        auto g = [&](double phi) {
            const double d2 = t * t + w * w + 2.0 * t * w * std::cos(phi);
            return std::pow(std::sin(phi), n - 2) * std::pow(1.0 + std::sqrt(d2), q - n);
        };
        QuadResult r = integrate(g, 0.0, std::numbers::pi, 1e-11);
        return r.value;
    };
    auto inner_f = [&](double s) { return angular_inner(std::pow(s, 1.0 / p)); };
    GiraudValue inner = integrate_segments(inner_f, {0.0, std::pow(delta, p)}, 1e-10);
    inner.value /= p;
    inner.error /= p;

    GiraudValue out;
    out.value = om_eq * (outer.value + inner.value);
    out.error = om_eq * (outer.error + inner.error) + 1e-11 * std::abs(out.value);
    return out;
}

EnvelopeSweep envelope_ratio_sweep(int n, int p, int q, std::span<const double> rhos,
                                   std::span<const double> xi_fractions, par::Policy pol) {
    EnvelopeSweep sweep;
    sweep.rows.resize(rhos.size() * xi_fractions.size());
    par::for_each(
        sweep.rows.size(),
        [&](std::size_t idx) {
            const double rho = rhos[idx / xi_fractions.size()];
            const double frac = xi_fractions[idx % xi_fractions.size()];
            GiraudParams gp{n, p, q, rho, frac * rho};
            GiraudValue v = giraud_integral(gp);
            EnvelopeRow row;
            row.rho = rho;
            row.xi_norm = gp.xi_norm;
            row.value = v.value;
            row.envelope = gp.envelope();
            row.ratio = v.value / row.envelope;
            sweep.rows[idx] = row;
        },
        pol);
    sweep.min_ratio = sweep.rows[0].ratio;
    sweep.max_ratio = sweep.rows[0].ratio;
    for (const auto& r : sweep.rows) {
        sweep.min_ratio = std::min(sweep.min_ratio, r.ratio);
        sweep.max_ratio = std::max(sweep.max_ratio, r.ratio);
    }
    return sweep;
}

MonteCarloEstimate giraud_monte_carlo(const GiraudParams& params, std::uint64_t nsamples,
                                      std::uint64_t seed, par::Policy pol) {
    params.validate();
    const int n = params.n;
    const double rho = params.rho, t = params.xi_norm;

    const std::size_t nchunks = par::kChunks;
    std::vector<double> sums(nchunks, 0.0), sq_sums(nchunks, 0.0);
    auto chunk_body = [&](std::size_t c) {
        const std::uint64_t lo = c * nsamples / nchunks;
        const std::uint64_t hi = (c + 1) * nsamples / nchunks;
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + c + 1);
        auto uniform = [&rng] {
            return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
        };
        auto normal = [&] {
            // Box-Muller from two uniforms (portable across platforms)
            double u1 = uniform(), u2 = uniform();
            while (u1 == 0.0) u1 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        };
        double acc = 0.0, acc2 = 0.0;
        std::vector<double> z(static_cast<std::size_t>(n));
        for (std::uint64_t i = lo; i < hi; ++i) {
            double norm2 = 0.0;
            for (auto& zi : z) {
                zi = normal();
                norm2 += zi * zi;
            }
            const double radius = rho * std::pow(uniform(), 1.0 / n);
            const double scale = radius / std::sqrt(norm2);
            double dist2 = 0.0, znorm2 = 0.0;
            for (std::size_t d = 0; d < z.size(); ++d) {
                const double zd = z[d] * scale;
                const double diff = d == 0 ? zd - t : zd;
                dist2 += diff * diff;
                znorm2 += zd * zd;
            }
            const double f = std::pow(1.0 + std::sqrt(znorm2), params.q - n) *
                             std::pow(dist2, 0.5 * (params.p - n));
            acc += f;
            acc2 += f * f;
        }
        sums[c] = acc;
        sq_sums[c] = acc2;
    };
    par::for_each(nchunks, chunk_body, pol);

    double total = 0.0, total_sq = 0.0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        total += sums[c];
        total_sq += sq_sums[c];
    }
    const double mean = total / static_cast<double>(nsamples);
    const double var = total_sq / static_cast<double>(nsamples) - mean * mean;
    const double ball_volume =
        Dimension::unit_sphere_area(n).to_double() * std::pow(rho, n) / n;
    MonteCarloEstimate est;
    est.value = mean * ball_volume;
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(nsamples)) * ball_volume;
    return est;
}

}  // namespace polylab
