#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polylab {

/// Truncated Taylor series in one variable about a base point: c[i] is the
/// i-th Taylor coefficient, i.e. f^(i)/i!. Arithmetic truncates to the
/// shorter operand. T is double or an exact rational type.
template <class T>
class Jet {
public:
    Jet() = default;
    explicit Jet(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

    static Jet constant(const T& v, int order) {
        std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
        c[0] = v;
        return Jet(std::move(c));
    }
    /// The identity map r |-> r expanded at r0.
    static Jet variable(const T& r0, int order) {
        Jet j = constant(r0, order);
        if (order >= 1) j.c_[1] = T(1);
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    T& coeff(int i) { return c_[static_cast<std::size_t>(i)]; }
    const T& value() const { return c_[0]; }

    /// m-th derivative value (coefficient times m!).
    T derivative(int m) const {
        T f(1);
        for (int i = 2; i <= m; ++i) f *= T(i);
        return c_[static_cast<std::size_t>(m)] * f;
    }

    Jet truncated(int order) const {
        if (order >= this->order()) return *this;
        return Jet(std::vector<T>(c_.begin(), c_.begin() + order + 1));
    }

    /// d/dr as a series: one order shorter.
    Jet differentiate() const {
        if (c_.size() < 2) return Jet(std::vector<T>{T(0)});
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Jet(std::move(d));
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        std::size_t m = std::min(a.c_.size(), b.c_.size());
        std::vector<T> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = a.c_[i] + b.c_[i];
        return Jet(std::move(c));
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        std::size_t m = std::min(a.c_.size(), b.c_.size());
        std::vector<T> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = a.c_[i] - b.c_[i];
        return Jet(std::move(c));
    }
    Jet operator-() const {
        Jet r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        std::size_t m = std::min(a.c_.size(), b.c_.size());
        std::vector<T> c(m, T(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; i + j < m; ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Jet(std::move(c));
    }
    friend Jet operator*(const T& s, Jet a) {
        for (auto& x : a.c_) x *= s;
        return a;
    }

    /// 1/this; requires nonzero constant term.
    Jet reciprocal() const {
        if (c_[0] == T(0)) throw std::domain_error("Jet: reciprocal with zero constant term");
        std::vector<T> w(c_.size(), T(0));
        w[0] = T(1) / c_[0];
        for (std::size_t m = 1; m < c_.size(); ++m) {
            T acc(0);
            for (std::size_t j = 1; j <= m; ++j) acc += c_[j] * w[m - j];
            w[m] = -acc / c_[0];
        }
        return Jet(std::move(w));
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

    /// Integer power via binary exponentiation (exact for rational T).
    Jet pow_int(long e) const {
        if (e < 0) return reciprocal().pow_int(-e);
        Jet acc = constant(T(1), order());
        Jet base = *this;
        unsigned long m = static_cast<unsigned long>(e);
        while (m) {
            if (m & 1) acc = acc * base;
            base = base * base;
            m >>= 1;
        }
        return acc;
    }

    std::vector<T> derivative_list() const {
        std::vector<T> d(c_.size());
        T fact(1);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i >= 2) fact *= T(static_cast<long>(i));
            d[i] = c_[i] * fact;
        }
        return d;
    }

    static Jet from_derivatives(const std::vector<T>& d) {
        std::vector<T> c(d.size());
        T fact(1);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i >= 2) fact *= T(static_cast<long>(i));
            c[i] = d[i] / fact;
        }
        return Jet(std::move(c));
    }

private:
    std::vector<T> c_;
};

/// u^alpha for real alpha; requires positive constant term.
inline Jet<double> pow(const Jet<double>& u, double alpha) {
    const int M = u.order();
    if (!(u.coeff(0) > 0)) throw std::domain_error("Jet: pow of non-positive base");
    std::vector<double> w(static_cast<std::size_t>(M) + 1, 0.0);
    w[0] = std::pow(u.coeff(0), alpha);
    for (int m = 1; m <= M; ++m) {
        double acc = 0.0;
        for (int j = 1; j <= m; ++j)
            acc += (alpha * j - (m - j)) * u.coeff(j) * w[static_cast<std::size_t>(m - j)];
        w[static_cast<std::size_t>(m)] = acc / (m * u.coeff(0));
    }
    return Jet<double>(std::move(w));
}

inline Jet<double> exp(const Jet<double>& u) {
    const int M = u.order();
    std::vector<double> w(static_cast<std::size_t>(M) + 1, 0.0);
    w[0] = std::exp(u.coeff(0));
    for (int m = 1; m <= M; ++m) {
        double acc = 0.0;
        for (int j = 1; j <= m; ++j) acc += j * u.coeff(j) * w[static_cast<std::size_t>(m - j)];
        w[static_cast<std::size_t>(m)] = acc / m;
    }
    return Jet<double>(std::move(w));
}

}  // namespace polylab
