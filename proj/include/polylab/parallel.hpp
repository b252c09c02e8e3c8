#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polylab::par {

enum class Policy { Serial, OpenMP };

inline Policy default_policy() {
#ifdef _OPENMP
    return Policy::OpenMP;
#else
    return Policy::Serial;
#endif
}

inline constexpr std::size_t kChunks = 64;

/// Sum of f(i) over i in [0,n). The index range is split into a fixed number
/// of chunks independent of the thread count; each chunk accumulates in index
/// order and the partials combine in chunk order, so Serial and OpenMP
/// results are bitwise identical.
template <class F>
double sum(std::size_t n, F&& f, Policy pol = default_policy()) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = std::min<std::size_t>(kChunks, n);
    std::vector<double> partial(nchunks, 0.0);
    auto body = [&](std::size_t c) {
        const std::size_t lo = c * n / nchunks;
        const std::size_t hi = (c + 1) * n / nchunks;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        partial[c] = acc;
    };
#ifdef _OPENMP
    if (pol == Policy::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long c = 0; c < static_cast<long>(nchunks); ++c) body(static_cast<std::size_t>(c));
    } else
#endif
    {
        (void)pol;
        for (std::size_t c = 0; c < nchunks; ++c) body(c);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// Max of f(i) over i in [0,n); n must be positive.
template <class F>
double max(std::size_t n, F&& f, Policy pol = default_policy()) {
    const std::size_t nchunks = std::min<std::size_t>(kChunks, n);
    std::vector<double> partial(nchunks, 0.0);
    auto body = [&](std::size_t c) {
        const std::size_t lo = c * n / nchunks;
        const std::size_t hi = (c + 1) * n / nchunks;
        double m = f(lo);
        for (std::size_t i = lo + 1; i < hi; ++i) m = std::max(m, f(i));
        partial[c] = m;
    };
#ifdef _OPENMP
    if (pol == Policy::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long c = 0; c < static_cast<long>(nchunks); ++c) body(static_cast<std::size_t>(c));
    } else
#endif
    {
        (void)pol;
        for (std::size_t c = 0; c < nchunks; ++c) body(c);
    }
    double m = partial[0];
    for (double p : partial) m = std::max(m, p);
    return m;
}

/// Independent evaluation f(i) for i in [0,n); results land in caller storage.
template <class F>
void for_each(std::size_t n, F&& f, Policy pol = default_policy()) {
#ifdef _OPENMP
    if (pol == Policy::OpenMP) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < static_cast<long>(n); ++i) f(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)pol;
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace polylab::par
