#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "polylab/dimension.hpp"
#include "polylab/jet.hpp"
#include "polylab/scalar.hpp"

namespace polylab {

/// Value and radial derivatives (u, u', ..., u^(m)) of a rotationally
/// symmetric function at a radius. Jets at radius 0 are admitted only for
/// even extensions: odd-order entries must vanish there.
struct RadialJet {
    double radius = 0.0;
    std::vector<double> values;

    RadialJet(double r, std::vector<double> v) : radius(r), values(std::move(v)) {
        if (radius < 0) throw std::invalid_argument("RadialJet: radius must be nonnegative");
        if (values.empty()) throw std::invalid_argument("RadialJet: empty jet");
        if (radius == 0.0) {
            for (std::size_t i = 1; i < values.size(); i += 2)
                if (values[i] != 0.0)
                    throw std::invalid_argument(
                        "RadialJet: jet at radius 0 must have vanishing odd-order entries");
        }
    }

    int order() const { return static_cast<int>(values.size()) - 1; }
};

/// Jet of Delta_0 u = -(u'' + (n-1)/r u') to order m-2.
inline RadialJet radial_laplacian(const RadialJet& jet, const Dimension& dim) {
    const int m = jet.order();
    if (m < 2) throw std::invalid_argument("radial_laplacian: jet order must be >= 2");
    const int n = dim.n();
    std::vector<double> out(static_cast<std::size_t>(m - 1));
    if (jet.radius == 0.0) {
        // even series: (Delta_0 u)^(j)(0) = -d_{j+2} (j+n)/(j+1)
        for (int j = 0; j + 2 <= m; ++j)
            out[static_cast<std::size_t>(j)] =
                -jet.values[static_cast<std::size_t>(j + 2)] * (j + n) / (j + 1);
        return RadialJet(0.0, std::move(out));
    }
    Jet<double> u = Jet<double>::from_derivatives(jet.values);
    Jet<double> d1 = u.differentiate();
    Jet<double> d2 = d1.differentiate();
    Jet<double> inv_r = Jet<double>::variable(jet.radius, m).reciprocal();
    Jet<double> lap = -(d2 + static_cast<double>(n - 1) * (d1 * inv_r).truncated(m - 2));
    auto d = lap.derivative_list();
    for (int j = 0; j + 2 <= m; ++j) out[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)];
    return RadialJet(jet.radius, std::move(out));
}

/// Symbolic radial expression: finite sum of terms
///   coeff * r^a * (mu2 + beta r^2)^(-b),  b rational, coeff/mu2/beta exact.
/// The family is closed under d/dr, Delta_0 and the dilation field.
class ClosedFormRadial {
public:
    struct Term {
        Scalar coeff;
        long a = 0;
        Rational b = 0;   // zero means pure power c r^a
        Scalar mu2 = Scalar(1);
        Scalar beta = Scalar(0);
    };

    ClosedFormRadial() = default;

    static ClosedFormRadial zero() { return ClosedFormRadial(); }

    static ClosedFormRadial power(Scalar c, long a) {
        ClosedFormRadial f;
        if (!c.is_zero()) f.terms_.push_back(Term{std::move(c), a, Rational(0), Scalar(1), Scalar(0)});
        return f;
    }

    /// c * r^a * (mu2 + beta r^2)^(-b)
    static ClosedFormRadial kernel(Scalar c, long a, Rational b, Scalar mu2, Scalar beta) {
        if (b == 0 || beta.is_zero()) return power(std::move(c), a);
        ClosedFormRadial f;
        if (!c.is_zero()) f.terms_.push_back(Term{std::move(c), a, std::move(b), std::move(mu2), std::move(beta)});
        return f;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    ClosedFormRadial& operator+=(const ClosedFormRadial& o) {
        for (const auto& t : o.terms_) add_term(t);
        return *this;
    }
    friend ClosedFormRadial operator+(ClosedFormRadial a, const ClosedFormRadial& b) { return a += b; }
    friend ClosedFormRadial operator-(ClosedFormRadial a, const ClosedFormRadial& b) {
        return a += (Scalar(-1) * b);
    }
    friend ClosedFormRadial operator*(const Scalar& s, const ClosedFormRadial& f) {
        ClosedFormRadial g;
        if (s.is_zero()) return g;
        for (auto t : f.terms_) {
            t.coeff *= s;
            g.terms_.push_back(std::move(t));
        }
        return g;
    }

    ClosedFormRadial derivative() const {
        ClosedFormRadial g;
        for (const auto& t : terms_) {
            if (t.a != 0) {
                Term s = t;
                s.coeff *= Scalar(t.a);
                s.a -= 1;
                g.add_term(s);
            }
            if (t.b != 0) {
                Term s = t;
                s.coeff *= Scalar(Rational(-2) * t.b) * t.beta;
                s.a += 1;
                s.b += 1;
                g.add_term(s);
            }
        }
        return g;
    }

    /// Delta_0 u = -(u'' + (n-1)/r u')
    ClosedFormRadial laplacian(const Dimension& dim) const {
        ClosedFormRadial d1 = derivative();
        ClosedFormRadial d2 = d1.derivative();
        ClosedFormRadial out;
        for (auto t : d2.terms_) {
            t.coeff *= Scalar(-1);
            out.add_term(t);
        }
        for (auto t : d1.terms_) {
            t.coeff *= Scalar(-(dim.n() - 1));
            t.a -= 1;
            out.add_term(t);
        }
        return out;
    }

    /// (n-2k)/2 u + r u'
    ClosedFormRadial dilation(const Dimension& dim) const {
        ClosedFormRadial out = Scalar(Rational(dim.n() - 2 * dim.k(), 2)) * (*this);
        for (auto t : derivative().terms_) {
            t.a += 1;
            out.add_term(t);
        }
        return out;
    }

    double eval(double r) const {
        double acc = 0.0;
        for (const auto& t : terms_) {
            double base = t.b == 0 ? 1.0
                                   : std::pow(t.mu2.to_double() + t.beta.to_double() * r * r,
                                              -t.b.get_d());
            acc += t.coeff.to_double() * std::pow(r, static_cast<double>(t.a)) * base;
        }
        return acc;
    }

    Jet<double> jet(double r, int order) const {
        Jet<double> acc = Jet<double>::constant(0.0, order);
        Jet<double> var = Jet<double>::variable(r, order);
        for (const auto& t : terms_) {
            Jet<double> term = Jet<double>::constant(t.coeff.to_double(), order);
            if (t.a != 0) {
                if (r == 0.0 && t.a < 0) throw std::domain_error("ClosedFormRadial: singular jet at r=0");
                term = term * var.pow_int(t.a);
            }
            if (t.b != 0) {
                Jet<double> base = Jet<double>::constant(t.mu2.to_double(), order) +
                                   t.beta.to_double() * (var * var);
                term = term * polylab::pow(base, -t.b.get_d());
            }
            acc = acc + term;
        }
        return acc;
    }

    /// Exact value at rational radius. Requires each term to be exactly
    /// representable: rational base raised to a rational power.
    Scalar eval_exact(const Rational& r) const {
        Scalar acc(0);
        for (const auto& t : terms_) {
            Scalar v = t.coeff;
            v *= rational_power(r, t.a);
            if (t.b != 0) {
                Scalar base = t.mu2;
                if (r != 0) {
                    Scalar inc = t.beta;
                    inc *= Scalar(r * r);
                    base += inc;  // throws if beta irrational vs rational mu2
                }
                v *= rational_base_power(base.as_rational(), -t.b);
            }
            acc += v;
        }
        return acc;
    }

    /// Rewrites r^2 = ((mu2 + beta r^2) - mu2)/beta until every kernel term has
    /// r-power 0 or 1; pure powers are left alone. Canonicalizes sums of
    /// derivatives of a single kernel for exact comparisons.
    ClosedFormRadial reduced() const {
        ClosedFormRadial out;
        for (const auto& t : terms_) {
            Term cur = t;
            while (cur.b != 0 && cur.a >= 2) {
                Term up = cur;   // (1/beta) r^(a-2) (..)^(-b+1)
                up.coeff *= cur.beta.inverse();
                up.a -= 2;
                up.b -= 1;
                Term down = cur;  // -(mu2/beta) r^(a-2) (..)^(-b)
                down.coeff *= Scalar(-1) * cur.mu2 * cur.beta.inverse();
                down.a -= 2;
                if (up.b == 0) {
                    up.mu2 = Scalar(1);
                    up.beta = Scalar(0);
                }
                out_append_reduce(out, up);
                cur = down;
            }
            out.add_term(cur);
        }
        return out;
    }

    bool identical(const ClosedFormRadial& o) const {
        ClosedFormRadial d = *this - o;
        return d.terms_.empty();
    }

private:
    static void out_append_reduce(ClosedFormRadial& out, const Term& t) {
        if (t.b != 0 && t.a >= 2) {
            ClosedFormRadial tmp;
            tmp.terms_.push_back(t);
            out += tmp.reduced();
        } else {
            out.add_term(t);
        }
    }

    static Scalar rational_power(const Rational& r, long a) {
        if (a == 0) return Scalar(1);
        if (r == 0) {
            if (a > 0) return Scalar(0);
            throw std::domain_error("ClosedFormRadial: negative power at r=0");
        }
        Scalar s(r);
        return s.pow_int(a);
    }

    /// base^exp for positive rational base, rational exp.
    static Scalar rational_base_power(const Rational& base, const Rational& e) {
        if (base <= 0) throw std::domain_error("ClosedFormRadial: nonpositive base");
        mpz_class num = base.get_num(), den = base.get_den();
        long en = static_cast<long>(e.get_num().get_si());
        unsigned long ed = e.get_den().get_ui();
        Scalar s = Scalar::root(num.get_ui(), en, ed);
        if (den != 1) s *= Scalar::root(den.get_ui(), -en, ed);
        return s;
    }

    void add_term(const Term& t) {
        if (t.coeff.is_zero()) return;
        for (auto& u : terms_) {
            if (u.a == t.a && u.b == t.b && (t.b == 0 || (u.mu2 == t.mu2 && u.beta == t.beta)) &&
                u.coeff.same_irrational_part(t.coeff)) {
                u.coeff += t.coeff;
                if (u.coeff.is_zero()) {
                    u = terms_.back();
                    terms_.pop_back();
                }
                return;
            }
        }
        terms_.push_back(t);
    }

    std::vector<Term> terms_;
};

/// Exact symbolic Delta_0^j u.
inline ClosedFormRadial iterate_polyharmonic(const ClosedFormRadial& u, int j, const Dimension& dim) {
    if (j < 0) throw std::invalid_argument("iterate_polyharmonic: j must be >= 0");
    ClosedFormRadial v = u;
    for (int i = 0; i < j; ++i) v = v.laplacian(dim);
    return v;
}

/// Radial part of the Appendix-A half-power convention for odd exponents:
/// |grad Delta_0^{(j-1)/2} u| = |d/dr Delta_0^{(j-1)/2} u| for radial u.
inline ClosedFormRadial half_power_gradient(const ClosedFormRadial& u, int j, const Dimension& dim) {
    if (j < 1 || j % 2 == 0)
        throw std::invalid_argument("half_power_gradient: j must be odd and positive");
    return iterate_polyharmonic(u, (j - 1) / 2, dim).derivative();
}

/// (n-2k)/2 u + r u', the dilation field of the Pohozaev identity.
inline ClosedFormRadial dilation_action(const ClosedFormRadial& u, const Dimension& dim) {
    return u.dilation(dim);
}

}  // namespace polylab
