#pragma once

#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "loopfix/rational.hpp"

namespace loopfix {

namespace detail {

// Dense polynomials over the rationals, coefficient of x^i at index i.
using Poly = RatVec;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    if (b.empty()) throw error("cyclotomic", "polynomial division by zero");
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    Rational lead = b.back();
    while (a.size() >= b.size()) {
        Rational f = a.back() / lead;
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        poly_trim(a);
        if (a.size() < b.size()) break;
    }
    poly_trim(a);
    return {q, a};
}

inline long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

/// Coefficients of the N-th cyclotomic polynomial, computed by dividing
/// x^N - 1 by the cyclotomic polynomials of the proper divisors of N.
inline const Poly& cyclotomic_polynomial(long n) {
    static std::map<long, Poly> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<const Poly&(long)> get = [&](long m) -> const Poly& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        Poly p(m + 1, Rational(0));
        p[0] = -1;
        p[m] = 1;  // x^m - 1
        for (long d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto [q, r] = poly_divmod(p, get(d));
            if (!r.empty()) throw error("cyclotomic", "inexact division while building Φ");
            p = std::move(q);
        }
        return cache.emplace(m, std::move(p)).first->second;
    };
    return get(n);
}

inline Poly poly_mod(const Poly& a, long n) {
    auto [q, r] = poly_divmod(a, cyclotomic_polynomial(n));
    (void)q;
    return r;
}

}  // namespace detail

/// An element of the cyclotomic field Q(zeta_N), stored as the canonical
/// residue modulo the N-th cyclotomic polynomial. Equality is coefficient
/// equality after promotion to a common order. A floating point shadow of
/// the embedding zeta_N -> exp(2*pi*i/N) is carried for diagnostics only;
/// it never participates in any exact decision.
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(Rational(0)) {}

    explicit Cyclotomic(const Rational& q) : order_(1), coeffs_(1, q), shadow_(to_double(q), 0.0) {}

    explicit Cyclotomic(long long n) : Cyclotomic(rat(n)) {}

    static Cyclotomic zero() { return Cyclotomic(Rational(0)); }
    static Cyclotomic one() { return Cyclotomic(Rational(1)); }

    /// exp(2*pi*i*k/N).
    static Cyclotomic root_of_unity(long n, long long k) {
        if (n < 1) throw error("cyclotomic", "order must be positive");
        long long e = k % n;
        if (e < 0) e += n;
        Cyclotomic c;
        c.order_ = n;
        c.coeffs_ = power_basis(n, e);
        pad(c.coeffs_, degree(n));
        c.shadow_ = std::polar(1.0, 2.0 * std::numbers::pi * double(e) / double(n));
        return c;
    }

    /// exp(2*pi*i*q) for rational q; the order is the denominator of q.
    static Cyclotomic unit_phase(const Rational& q) {
        Integer den = q.get_den();
        Integer rem = q.get_num() % den;
        return root_of_unity(to_ll(den), to_ll(rem));
    }

    long order() const { return order_; }
    const RatVec& coeffs() const { return coeffs_; }
    std::complex<double> shadow() const { return shadow_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// The exact rational value, if the element lies in Q.
    std::optional<Rational> to_rational() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return std::nullopt;
        return coeffs_.empty() ? Rational(0) : coeffs_[0];
    }

    /// As to_rational, but throws with the float shadow in the message.
    Rational require_rational(const std::string& who) const {
        auto q = to_rational();
        if (!q) {
            std::ostringstream os;
            os << "non-rational value (shadow " << shadow_.real() << " + " << shadow_.imag()
               << "i, order " << order_ << ")";
            throw error(who, os.str());
        }
        return *q;
    }

    Integer require_integer(const std::string& who) const {
        Rational q = require_rational(who);
        if (!loopfix::is_integral(q)) {
            std::ostringstream os;
            os << "non-integer value " << q.get_str() << " (shadow " << shadow_.real() << ")";
            throw error(who, os.str());
        }
        return q.get_num();
    }

    /// Image in Q(zeta_M); M must be a multiple of the current order.
    Cyclotomic promoted(long m) const {
        if (m == order_) return *this;
        if (m % order_ != 0) throw error("cyclotomic", "promotion target is not a multiple");
        long step = m / order_;
        detail::Poly acc(degree(m), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            detail::Poly mono = power_basis(m, (long long)(i)*step % m);
            for (size_t j = 0; j < mono.size(); ++j) acc[j] += coeffs_[i] * mono[j];
        }
        Cyclotomic c;
        c.order_ = m;
        c.coeffs_ = std::move(acc);
        pad(c.coeffs_, degree(m));
        c.shadow_ = shadow_;
        return c;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
        x.shadow_ = a.shadow_ + b.shadow_;
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
        x.shadow_ = a.shadow_ - b.shadow_;
        return x;
    }

    Cyclotomic operator-() const {
        Cyclotomic c = *this;
        for (auto& q : c.coeffs_) q = -q;
        c.shadow_ = -shadow_;
        return c;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        detail::Poly prod = detail::poly_mul(x.coeffs_, y.coeffs_);
        detail::poly_trim(prod);
        Cyclotomic c;
        c.order_ = x.order_;
        c.coeffs_ = detail::poly_mod(prod, x.order_);
        pad(c.coeffs_, degree(x.order_));
        c.shadow_ = a.shadow_ * b.shadow_;
        return c;
    }

    friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) {
        Cyclotomic c = a;
        for (auto& q : c.coeffs_) q *= s;
        c.shadow_ = to_double(s) * a.shadow_;
        return c;
    }

    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    /// Complex conjugate, the image of zeta under zeta -> zeta^(N-1).
    Cyclotomic conj() const {
        detail::Poly acc(degree(order_), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            detail::Poly mono = power_basis(order_, (long long)(i) * (order_ - 1) % order_);
            for (size_t j = 0; j < mono.size(); ++j) acc[j] += coeffs_[i] * mono[j];
        }
        Cyclotomic c;
        c.order_ = order_;
        c.coeffs_ = std::move(acc);
        pad(c.coeffs_, degree(order_));
        c.shadow_ = std::conj(shadow_);
        return c;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm; the
    /// cyclotomic polynomial is irreducible, so every nonzero residue is a unit.
    Cyclotomic inv() const {
        if (is_zero()) throw error("cyclotomic", "division by zero");
        detail::Poly r0 = detail::cyclotomic_polynomial(order_);
        detail::Poly r1 = coeffs_;
        detail::poly_trim(r1);
        detail::Poly s0{}, s1{Rational(1)};
        while (!r1.empty() && r1.size() > 1) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            detail::Poly qs = detail::poly_mul(q, s1);
            detail::Poly s2 = s0;
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
            for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::poly_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty()) throw error("cyclotomic", "inverse of a zero divisor");
        // r1 is the constant gcd; s1 * this == r1 (mod Phi).
        Rational g = 1 / r1[0];
        Cyclotomic c;
        c.order_ = order_;
        c.coeffs_ = detail::poly_mod(s1, order_);
        for (auto& q : c.coeffs_) q *= g;
        pad(c.coeffs_, degree(order_));
        c.shadow_ = 1.0 / shadow_;
        return c;
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inv(); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        return x.coeffs_ == y.coeffs_;
    }

    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    Cyclotomic pow(long long e) const {
        if (e < 0) return inv().pow(-e);
        Cyclotomic acc = one(), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /// Evaluate the canonical embedding from the exact coefficients.
    std::complex<double> embed() const {
        std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / double(order_));
        std::complex<double> acc = 0.0, p = 1.0;
        for (const auto& q : coeffs_) {
            acc += to_double(q) * p;
            p *= z;
        }
        return acc;
    }

    static long degree(long n) { return (long)detail::cyclotomic_polynomial(n).size() - 1; }

private:
    static detail::Poly power_basis(long n, long long e) {
        detail::Poly p(e + 1, Rational(0));
        p[e] = 1;
        return detail::poly_mod(p, n);
    }

    static void pad(RatVec& v, long deg) { v.resize(deg, Rational(0)); }

    static std::pair<Cyclotomic, Cyclotomic> to_common(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return {a, b};
        long l = std::lcm(a.order_, b.order_);
        return {a.promoted(l), b.promoted(l)};
    }

    long order_;
    RatVec coeffs_;
    std::complex<double> shadow_;
};

}  // namespace loopfix
