#include "doctest.h"

#include <cmath>
#include <vector>

#include "polylab/bubble.hpp"
#include "polylab/parallel.hpp"

using namespace polylab;

TEST_CASE("parallel reductions match the serial reference bitwise") {
    auto f = [](std::size_t i) {
        double x = 0.1 * static_cast<double>(i + 1);
        return std::sin(x) / (1.0 + x * x);
    };
    for (std::size_t n : {1ul, 7ul, 64ul, 1000ul, 123457ul}) {
        CHECK(par::sum(n, f, par::Policy::Serial) == par::sum(n, f, par::Policy::OpenMP));
        CHECK(par::max(n, f, par::Policy::Serial) == par::max(n, f, par::Policy::OpenMP));
    }
}

TEST_CASE("kernels give identical results under both policies") {
    std::vector<double> grid;
    for (int i = 0; i < 300; ++i) grid.push_back(0.02 * i);
    auto spec = BubbleSpec::make(Dimension(5, 2));
    const double serial = bubble_pde_residual(spec, grid, par::Policy::Serial);
    const double omp = bubble_pde_residual(spec, grid, par::Policy::OpenMP);
    CHECK(serial == omp);
}
