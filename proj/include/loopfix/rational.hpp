#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace loopfix {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// Error type used across the library; `where` names the module that raised it.
class error : public std::runtime_error {
public:
    error(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what) {}
};

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw error("rational", "zero denominator");
    Rational q{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
    q.canonicalize();
    return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw error("rational", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_int(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

/// Fractional part in [0,1).
inline Rational frac_part(const Rational& q) { return q - Rational(floor_int(q)); }

inline long long to_ll(const Integer& z) {
    if (!z.fits_slong_p()) throw error("rational", "integer out of machine range: " + z.get_str());
    return z.get_si();
}

inline long long to_ll(const Rational& q) {
    if (!is_integral(q)) throw error("rational", "expected an integer, got " + q.get_str());
    return to_ll(q.get_num());
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline RatVec to_rat_vec(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = rat(v[i]);
    return r;
}

inline IntVec to_int_vec(const RatVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = to_ll(v[i]);
    return r;
}

inline bool is_integral(const RatVec& v) {
    for (const auto& q : v)
        if (!is_integral(q)) return false;
    return true;
}

/// Least common multiple of the coordinate denominators.
inline Integer denominator_lcm(const RatVec& v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    return l;
}

// ---------------------------------------------------------------------------
// Vector and small dense matrix arithmetic over the rationals. The matrices
// in this project never exceed the total rank of the group (at most 8 or so),
// so plain Gaussian elimination is all that is needed.
// ---------------------------------------------------------------------------

inline void check_dim(size_t a, size_t b, const char* where) {
    if (a != b) throw error(where, "dimension mismatch");
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    check_dim(a.size(), b.size(), "rational");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVec& a, const RatVec& b) {
    check_dim(a.size(), b.size(), "rational");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += rat(a[i]) * b[i];
    return s;
}

inline long long dot(const IntVec& a, const IntVec& b) {
    check_dim(a.size(), b.size(), "rational");
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
    check_dim(a.size(), b.size(), "rational");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    check_dim(a.size(), b.size(), "rational");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec scale(const Rational& c, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
    check_dim(a.size(), b.size(), "rational");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
    check_dim(a.size(), b.size(), "rational");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec neg(const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline bool is_zero(const IntVec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

inline IntVec mat_vec(const IntMat& m, const IntVec& x) {
    IntVec y(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        check_dim(m[i].size(), x.size(), "rational");
        for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    }
    return y;
}

inline RatVec mat_vec(const IntMat& m, const RatVec& x) {
    RatVec y(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i) {
        check_dim(m[i].size(), x.size(), "rational");
        for (size_t j = 0; j < x.size(); ++j) y[i] += rat(m[i][j]) * x[j];
    }
    return y;
}

inline RatVec mat_vec(const RatMat& m, const RatVec& x) {
    RatVec y(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i) {
        check_dim(m[i].size(), x.size(), "rational");
        for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    }
    return y;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    IntMat c(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i) {
        check_dim(a[i].size(), k, "rational");
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    }
    return c;
}

inline IntMat transpose(const IntMat& a) {
    IntMat t(a[0].size(), IntVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline IntMat identity_mat(size_t n) {
    IntMat m(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatMat to_rat_mat(const IntMat& m) {
    RatMat r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = to_rat_vec(m[i]);
    return r;
}

/// Solve m x = rhs by Gaussian elimination. Throws if m is singular.
inline RatVec solve(RatMat m, RatVec rhs) {
    size_t n = m.size();
    check_dim(rhs.size(), n, "rational");
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw error("rational", "singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational inv_p = 1 / m[col][col];
        for (size_t j = col; j < n; ++j) m[col][j] *= inv_p;
        rhs[col] *= inv_p;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational f = m[row][col];
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    return rhs;
}

inline RatVec solve(const IntMat& m, const RatVec& rhs) { return solve(to_rat_mat(m), rhs); }

inline RatMat inverse(const RatMat& m) {
    size_t n = m.size();
    RatMat inv(n, RatVec(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        RatVec e(n, Rational(0));
        e[i] = 1;
        RatVec col = solve(m, e);
        for (size_t j = 0; j < n; ++j) inv[j][i] = col[j];
    }
    return inv;
}

inline Rational determinant(RatMat m) {
    size_t n = m.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv_p = 1 / m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rational f = m[row][col] * inv_p;
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return det;
}

inline Integer determinant(const IntMat& m) {
    Rational d = determinant(to_rat_mat(m));
    if (!is_integral(d)) throw error("rational", "integer matrix with non-integer determinant");
    return d.get_num();
}

}  // namespace loopfix
