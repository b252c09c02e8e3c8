#include "polylab/harmonic_poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polylab {

namespace {

int index_sum(const HomPoly::MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

/// Delta_0 eigenvalue of the sphere Laplacian on degree-l spherical harmonics.
Rational lambda_sphere(int l, int n) { return Rational(l) * (l + n - 2); }

}  // namespace

HomPoly HomPoly::coordinate(int n, int i) {
    if (i < 0 || i >= n) throw std::invalid_argument("HomPoly::coordinate: index out of range");
    HomPoly p(n, 1);
    MultiIndex a(static_cast<std::size_t>(n), 0);
    a[static_cast<std::size_t>(i)] = 1;
    p.coeffs_[a] = 1;
    return p;
}

HomPoly HomPoly::radius_squared(int n) {
    HomPoly p(n, 2);
    for (int i = 0; i < n; ++i) {
        MultiIndex a(static_cast<std::size_t>(n), 0);
        a[static_cast<std::size_t>(i)] = 2;
        p.coeffs_[a] = 1;
    }
    return p;
}

HomPoly HomPoly::monomial(int n, const MultiIndex& alpha, const Rational& c) {
    if (static_cast<int>(alpha.size()) != n) throw std::invalid_argument("HomPoly: bad multi-index");
    HomPoly p(n, index_sum(alpha));
    if (c != 0) p.coeffs_[alpha] = c;
    return p;
}

void HomPoly::set(const MultiIndex& alpha, const Rational& c) {
    if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("HomPoly: bad multi-index");
    if (index_sum(alpha) != degree_)
        throw std::invalid_argument("HomPoly: multi-index degree mismatch");
    if (c == 0)
        coeffs_.erase(alpha);
    else
        coeffs_[alpha] = c;
}

Rational HomPoly::coefficient(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    if (n_ != o.n_ || degree_ != o.degree_)
        throw std::invalid_argument("HomPoly: sum of mismatched degrees");
    for (const auto& [a, c] : o.coeffs_) {
        auto it = coeffs_.find(a);
        if (it == coeffs_.end()) {
            coeffs_[a] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) { return *this += -o; }

HomPoly HomPoly::operator-() const {
    HomPoly p(*this);
    for (auto& [a, c] : p.coeffs_) c = -c;
    return p;
}

HomPoly operator*(const Rational& s, HomPoly p) {
    if (s == 0) return HomPoly(p.n_, p.degree_);
    for (auto& [a, c] : p.coeffs_) c *= s;
    return p;
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero() || b.is_zero()) return HomPoly(a.n_, -1);
    HomPoly p(a.n_, a.degree_ + b.degree_);
    for (const auto& [ai, ac] : a.coeffs_) {
        for (const auto& [bi, bc] : b.coeffs_) {
            HomPoly::MultiIndex m(ai.size());
            for (std::size_t i = 0; i < ai.size(); ++i) m[i] = ai[i] + bi[i];
            auto it = p.coeffs_.find(m);
            if (it == p.coeffs_.end()) {
                Rational c = ac * bc;
                if (c != 0) p.coeffs_[m] = c;
            } else {
                it->second += ac * bc;
                if (it->second == 0) p.coeffs_.erase(it);
            }
        }
    }
    return p;
}

HomPoly HomPoly::laplacian() const {
    HomPoly out(n_, degree_ - 2);
    if (degree_ < 2) return HomPoly(n_, degree_ >= 0 ? degree_ - 2 : -1);
    for (const auto& [a, c] : coeffs_) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] >= 2) {
                MultiIndex m = a;
                m[i] -= 2;
                Rational add = Rational(-a[i]) * (a[i] - 1) * c;  // Delta_0 = -sum d_ii
                auto it = out.coeffs_.find(m);
                if (it == out.coeffs_.end()) {
                    out.coeffs_[m] = add;
                } else {
                    it->second += add;
                    if (it->second == 0) out.coeffs_.erase(it);
                }
            }
        }
    }
    return out;
}

HomPoly HomPoly::partial(int i) const {
    HomPoly out(n_, degree_ - 1);
    if (degree_ < 1) return HomPoly(n_, degree_ >= 0 ? degree_ - 1 : -1);
    for (const auto& [a, c] : coeffs_) {
        if (a[static_cast<std::size_t>(i)] >= 1) {
            MultiIndex m = a;
            m[static_cast<std::size_t>(i)] -= 1;
            Rational add = Rational(a[static_cast<std::size_t>(i)]) * c;
            auto it = out.coeffs_.find(m);
            if (it == out.coeffs_.end())
                out.coeffs_[m] = add;
            else {
                it->second += add;
                if (it->second == 0) out.coeffs_.erase(it);
            }
        }
    }
    return out;
}

Rational HomPoly::eval(const std::vector<Rational>& x) const {
    Rational acc(0);
    for (const auto& [a, c] : coeffs_) {
        Rational t = c;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int e = 0; e < a[i]; ++e) t *= x[i];
        acc += t;
    }
    return acc;
}

double HomPoly::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& [a, c] : coeffs_) {
        double t = c.get_d();
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int e = 0; e < a[i]; ++e) t *= x[i];
        acc += t;
    }
    return acc;
}

std::string HomPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > 0) os << "*x" << i + 1 << "^" << a[i];
    }
    return first ? "0" : os.str();
}

HomPoly HarmonicDecomposition::recombine() const {
    HomPoly out(n, degree);
    HomPoly r2 = HomPoly::radius_squared(n);
    for (const auto& [p, h] : components) {
        if (h.is_zero()) continue;
        HomPoly term = h;
        for (int i = 0; i < p; ++i) term = term * r2;
        out += term;
    }
    return out;
}

HarmonicDecomposition decompose(const HomPoly& psi) {
    HarmonicDecomposition dec;
    dec.n = psi.n();
    dec.degree = psi.degree();
    if (psi.is_zero()) return dec;
    const int l = psi.degree();
    const int n = psi.n();
    const HomPoly r2 = HomPoly::radius_squared(n);
    HomPoly rem = psi;
    for (int p = l / 2; p >= 0; --p) {
        const int lp = l - 2 * p;
        HomPoly d = rem;
        for (int i = 0; i < p; ++i) d = d.laplacian();
        // Delta_0^p (r^{2p} h_{l'}) = prod_{i=1..p} (-2i)(2i + 2l' + n - 2) h_{l'}
        Rational denom(1);
        for (int i = 1; i <= p; ++i) denom *= Rational(-2 * i) * (2 * i + 2 * lp + n - 2);
        HomPoly h = (1 / denom) * d;
        if (!h.is_zero()) {
            HomPoly term = h;
            for (int i = 0; i < p; ++i) term = term * r2;
            rem -= term;
        }
        dec.components.emplace_back(p, std::move(h));
    }
    if (!rem.is_zero()) throw std::logic_error("decompose: nonzero remainder");
    return dec;
}

WeightedLaplacian weighted_power_laplacian(const Rational& q, const HomPoly& psi, int j,
                                           const Dimension& dim) {
    if (j < 0) throw std::invalid_argument("weighted_power_laplacian: j >= 0 required");
    const int n = dim.n();
    const int l = psi.degree() < 0 ? 0 : psi.degree();
    WeightedLaplacian out;
    out.exponent = q + l - 2 * j;
    if (psi.is_zero()) {
        out.poly = psi;
        return out;
    }
    HarmonicDecomposition dec = decompose(psi);
    HomPoly acc(n, l);
    const HomPoly r2 = HomPoly::radius_squared(n);
    for (const auto& [p, h] : dec.components) {
        if (h.is_zero()) continue;
        const int lp = l - 2 * p;
        Rational factor(1);
        for (int i = 0; i < j; ++i) {
            Rational e = q + l - 2 * i;
            factor *= lambda_sphere(lp, n) - e * (e + n - 2);
        }
        HomPoly term = factor * h;
        for (int i = 0; i < p; ++i) term = term * r2;
        acc += term;
    }
    out.poly = std::move(acc);
    return out;
}

HomPoly invert_weighted(const Rational& q, const HomPoly& T, const Dimension& dim) {
    const int n = dim.n();
    const int k = dim.k();
    if (T.is_zero()) return T;
    const int l = T.degree();
    HarmonicDecomposition dec = decompose(T);
    HomPoly psi(n, l);
    const HomPoly r2 = HomPoly::radius_squared(n);
    for (const auto& [p, h] : dec.components) {
        if (h.is_zero()) continue;
        const int lp = l - 2 * p;
        Rational factor(1);
        for (int i = 0; i < k; ++i) {
            Rational e = q + l - 2 * i;
            Rational f = lambda_sphere(lp, n) - e * (e + n - 2);
            if (f == 0) {
                std::ostringstream os;
                os << "invert_weighted: singular eigenvalue factor at (p=" << p << ", l'=" << lp
                   << "), q=" << q.get_str() << ", " << dim.str();
                throw std::domain_error(os.str());
            }
            factor *= f;
        }
        HomPoly term = (1 / factor) * h;
        for (int i = 0; i < p; ++i) term = term * r2;
        psi += term;
    }
    return psi;
}

Rational sphere_average(const HomPoly& psi) {
    if (psi.is_zero()) return Rational(0);
    const int l = psi.degree();
    if (l % 2 == 1) return Rational(0);
    if (l == 0) return psi.coefficient(HomPoly::MultiIndex(static_cast<std::size_t>(psi.n()), 0));
    // int psi = [l(n+l-2)]^{-1} int (-Delta_0 psi), recursively to degree 0
    Rational inner = sphere_average(-psi.laplacian());
    return inner / (Rational(l) * (psi.n() + l - 2));
}

GreenCorrection green_correction_pipeline(const SymMatrix& S_hess, const SymMatrix& ric_lap,
                                          const HomPoly& R5, const Dimension& dim,
                                          const Rational& c2, const Rational& c3) {
    const int n = dim.n();
    const int k = dim.k();
    if (n != 2 * k + 4 && n != 2 * k + 5)
        throw std::invalid_argument("green_correction_pipeline: requires n in {2k+4, 2k+5}");
    auto at = [n](const SymMatrix& m, int a, int b) -> Rational {
        if (static_cast<int>(m.size()) != n) throw std::invalid_argument("matrix size mismatch");
        return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    };
    // quadratic form Q(x) = [c2 S + c3 R]_{ab} x^a x^b
    HomPoly Q(n, 2);
    Rational trace(0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Rational coef = c2 * at(S_hess, a, b) + c3 * at(ric_lap, a, b);
            if (at(S_hess, a, b) != at(S_hess, b, a) || at(ric_lap, a, b) != at(ric_lap, b, a))
                throw std::invalid_argument("green_correction_pipeline: matrices must be symmetric");
            if (coef == 0) continue;
            HomPoly::MultiIndex m(static_cast<std::size_t>(n), 0);
            m[static_cast<std::size_t>(a)] += 1;
            m[static_cast<std::size_t>(b)] += 1;
            Q += HomPoly::monomial(n, m, coef);
        }
        trace += at(S_hess, a, a);
    }
    GreenCorrection out;
    out.trace_consistent = (trace == 0);

    const Rational q(2 * k - n);
    HomPoly T1 = HomPoly::radius_squared(n) * Q;
    out.psi4 = T1.is_zero() ? HomPoly(n, 4) : invert_weighted(q, T1, dim);
    out.psi5 = R5.is_zero() ? HomPoly(n, 5) : invert_weighted(q, R5, dim);

    const bool trace_free = Q.laplacian().is_zero();  // harmonic quadratic form
    if (trace_free) {
        Rational a4 = sphere_average(out.psi4);
        Rational a5 = sphere_average(out.psi5);
        if (a4 != 0 || a5 != 0) {
            std::ostringstream os;
            os << "green_correction_pipeline: mean-zero assertion failed, averages "
               << a4.get_str() << " and " << a5.get_str() << " (x omega)";
            throw std::logic_error(os.str());
        }
    }
    return out;
}

}  // namespace polylab
