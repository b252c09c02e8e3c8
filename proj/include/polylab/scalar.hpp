#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace polylab {

using Rational = mpq_class;

/// Exact scalar of the form  rat * pi^p * prod_i base_i^(e_i)  with rational
/// exponents e_i normalized into (0,1). Closed under multiplication; addition
/// is defined only between scalars with identical irrational parts. Root tags
/// stay symbolic until a floating conversion is requested.
class Scalar {
public:
    Scalar() : rat_(0), pi_pow_(0) {}
    Scalar(long v) : rat_(v), pi_pow_(0) {}
    Scalar(const Rational& v) : rat_(v), pi_pow_(0) {}
    Scalar(long num, long den) : rat_(num, den), pi_pow_(0) { rat_.canonicalize(); }

    static Scalar pi(long power = 1) {
        Scalar s(1);
        s.pi_pow_ = power;
        return s;
    }

    /// base^(num/den), base >= 1 integer. Integer parts of the exponent fold
    /// into the rational factor; perfect roots collapse.
    static Scalar root(unsigned long base, long num, unsigned long den) {
        if (base == 0) throw std::invalid_argument("Scalar::root: base must be positive");
        Scalar s(1);
        if (base == 1 || num == 0) return s;
        Rational e(num, static_cast<long>(den));
        e.canonicalize();
        s.roots_[static_cast<long>(base)] = e;
        s.normalize();
        return s;
    }

    bool is_zero() const { return rat_ == 0; }
    bool is_rational() const { return rat_ == 0 || (pi_pow_ == 0 && roots_.empty()); }

    const Rational& rational_part() const { return rat_; }

    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("Scalar: value is irrational");
        return rat_;
    }

    bool same_irrational_part(const Scalar& o) const {
        if (is_zero() || o.is_zero()) return true;
        return pi_pow_ == o.pi_pow_ && roots_ == o.roots_;
    }

    Scalar& operator+=(const Scalar& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) { *this = o; return *this; }
        if (!same_irrational_part(o))
            throw std::invalid_argument("Scalar: sum of incompatible irrational parts");
        rat_ += o.rat_;
        if (rat_ == 0) { pi_pow_ = 0; roots_.clear(); }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar operator-() const {
        Scalar s(*this);
        s.rat_ = -s.rat_;
        return s;
    }

    Scalar& operator*=(const Scalar& o) {
        if (is_zero() || o.is_zero()) { *this = Scalar(); return *this; }
        rat_ *= o.rat_;
        pi_pow_ += o.pi_pow_;
        for (const auto& [b, e] : o.roots_) roots_[b] += e;
        normalize();
        return *this;
    }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
        Scalar s;
        s.rat_ = 1 / rat_;
        s.pi_pow_ = -pi_pow_;
        for (const auto& [b, e] : roots_) s.roots_[b] = -e;
        s.normalize();
        return s;
    }

    Scalar pow_int(long e) const {
        Scalar acc(1);
        Scalar base = e >= 0 ? *this : inverse();
        unsigned long m = static_cast<unsigned long>(e >= 0 ? e : -e);
        while (m) {
            if (m & 1) acc *= base;
            base *= base;
            m >>= 1;
        }
        return acc;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.rat_ == b.rat_ && (a.rat_ == 0 || (a.pi_pow_ == b.pi_pow_ && a.roots_ == b.roots_));
    }

    double to_double() const {
        if (rat_ == 0) return 0.0;
        double v = rat_.get_d();
        for (long i = 0; i < std::abs(pi_pow_); ++i)
            v = pi_pow_ > 0 ? v * std::numbers::pi : v / std::numbers::pi;
        for (const auto& [b, e] : roots_)
            v *= std::pow(static_cast<double>(b), e.get_d());
        return v;
    }

    /// Evaluation at requested precision (bits). Radicals via Newton's n-th
    /// root on mpf; pi from a stored 180-digit literal (prec capped at 512).
    mpf_class to_mpf(unsigned prec_bits = 256) const {
        if (prec_bits > 512) prec_bits = 512;
        mpf_class v(rat_, prec_bits + 64);
        if (pi_pow_ != 0) {
            static const char* kPi =
                "3.14159265358979323846264338327950288419716939937510582097494459230781"
                "6406286208998628034825342117067982148086513282306647093844609550582231"
                "7253594081284811174502841027019385211056";
            mpf_class p(kPi, prec_bits + 64);
            for (long i = 0; i < std::abs(pi_pow_); ++i) {
                if (pi_pow_ > 0) v *= p; else v /= p;
            }
        }
        for (const auto& [b, e] : roots_) {
            mpf_class base(b, prec_bits + 64);
            mpz_class num = e.get_num(), den = e.get_den();
            bool neg = num < 0;
            if (neg) num = -num;
            mpf_class powed;
            mpf_pow_ui(powed.get_mpf_t(), base.get_mpf_t(), num.get_ui());
            mpf_class r = nth_root(powed, den.get_ui(), prec_bits + 64);
            if (neg) v /= r; else v *= r;
        }
        return mpf_class(v, prec_bits);
    }

    std::string str() const {
        std::ostringstream os;
        os << rat_.get_str();
        if (pi_pow_ != 0) os << "*pi^" << pi_pow_;
        for (const auto& [b, e] : roots_) os << "*" << b << "^(" << e.get_str() << ")";
        return os.str();
    }

private:
    void normalize() {
        for (auto it = roots_.begin(); it != roots_.end();) {
            Rational& e = it->second;
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
            if (fl != 0) {
                mpz_class bp;
                mpz_class base(it->first);
                if (fl > 0) {
                    mpz_pow_ui(bp.get_mpz_t(), base.get_mpz_t(), fl.get_ui());
                    rat_ *= bp;
                } else {
                    mpz_pow_ui(bp.get_mpz_t(), base.get_mpz_t(), mpz_class(-fl).get_ui());
                    rat_ /= bp;
                }
                e -= Rational(fl);
                e.canonicalize();
            }
            if (e == 0) { it = roots_.erase(it); continue; }
            // collapse perfect den-th powers, e.g. 4^(1/2) -> 2
            mpz_class base(it->first), rt;
            unsigned long den = e.get_den().get_ui();
            if (den > 1 && mpz_root(rt.get_mpz_t(), base.get_mpz_t(), den) != 0) {
                mpz_class rp;
                mpz_pow_ui(rp.get_mpz_t(), rt.get_mpz_t(), e.get_num().get_ui());
                rat_ *= rp;
                it = roots_.erase(it);
                continue;
            }
            ++it;
        }
        if (rat_ == 0) { pi_pow_ = 0; roots_.clear(); }
    }

    static mpf_class nth_root(const mpf_class& a, unsigned long n, unsigned prec) {
        if (n == 1) return a;
        mpf_class x(0, prec);
        mpf_class guess(std::pow(a.get_d(), 1.0 / static_cast<double>(n)), prec);
        x = guess;
        mpf_class nn(n, prec);
        for (int it = 0; it < 64; ++it) {
            mpf_class xp(1, prec);
            for (unsigned long i = 0; i + 1 < n; ++i) xp *= x;  // x^(n-1)
            mpf_class next = ((nn - 1) * x + a / xp) / nn;
            mpf_class diff = next - x;
            x = next;
            if (cmp(abs(diff), mpf_class(abs(x) >> (prec - 4))) <= 0) break;
        }
        return x;
    }

    Rational rat_;
    long pi_pow_;
    std::map<long, Rational> roots_;
};

}  // namespace polylab
