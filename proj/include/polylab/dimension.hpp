#pragma once

#include <stdexcept>
#include <string>

#include "polylab/scalar.hpp"

namespace polylab {

/// The pair (n, k) with 2k < n, together with the derived constants used
/// everywhere: the critical exponent 2n/(n-2k) and the exact area of the
/// unit (n-1)-sphere.
class Dimension {
public:
    Dimension(int n, int k) : n_(n), k_(k) {
        if (n < 3) throw std::invalid_argument("Dimension: n must be >= 3, got n=" + std::to_string(n));
        if (k < 1) throw std::invalid_argument("Dimension: k must be >= 1, got k=" + std::to_string(k));
        if (2 * k >= n)
            throw std::invalid_argument("Dimension: requires 2k < n, got n=" + std::to_string(n) +
                                        ", k=" + std::to_string(k));
    }

    int n() const { return n_; }
    int k() const { return k_; }

    /// 2n/(n-2k), exact.
    Rational crit_exp() const {
        Rational p(2 * n_, n_ - 2 * k_);
        p.canonicalize();
        return p;
    }

    /// Area of the unit (m-1)-sphere, exact: rational multiple of a pi power.
    static Scalar unit_sphere_area(int m) {
        if (m < 1) throw std::invalid_argument("unit_sphere_area: m >= 1 required");
        if (m == 1) return Scalar(2);  // S^0 = two points
        if (m % 2 == 0) {
            Rational c(2);
            for (int i = 2; i <= m / 2 - 1; ++i) c /= i;  // 2 / (m/2 - 1)!
            return Scalar(c) * Scalar::pi(m / 2);
        }
        Rational c(1);
        for (int i = 0; i < (m + 1) / 2; ++i) c *= 2;  // 2^((m+1)/2)
        for (int i = m - 2; i >= 1; i -= 2) c /= i;    // / (m-2)!!
        return Scalar(c) * Scalar::pi((m - 1) / 2);
    }

    /// omega_{n-1}.
    Scalar sphere_area() const { return unit_sphere_area(n_); }

    std::string str() const { return "(" + std::to_string(n_) + "," + std::to_string(k_) + ")"; }

    friend bool operator==(const Dimension& a, const Dimension& b) {
        return a.n_ == b.n_ && a.k_ == b.k_;
    }

private:
    int n_;
    int k_;
};

}  // namespace polylab
