#pragma once

#include "loopfix/cyclotomic.hpp"
#include "loopfix/root_system.hpp"

namespace loopfix {

/// A level: one integer per simple factor. The inner product at level k is
/// B_k = sum_j k_j B^(G_j); k may also be the dual Coxeter vector c or k + c.
using Level = std::vector<long>;

inline void validate_level(const RootSystem& rs, const Level& k) {
    if (k.size() != rs.factors.size())
        throw error("levelk", "level length does not match the number of factors");
    for (long kj : k)
        if (kj < 1) throw error("levelk", "level entries must be positive");
}

inline Level add_dual_coxeter(const RootSystem& rs, const Level& k) {
    validate_level(rs, k);
    Level out = k;
    for (size_t f = 0; f < out.size(); ++f) out[f] += rs.factors[f].dual_coxeter;
    return out;
}

/// Gram matrix of B_k on the coroot basis (block diagonal over factors).
inline IntMat gram_at_level(const RootSystem& rs, const Level& k) {
    if (k.size() != rs.factors.size())
        throw error("levelk", "level length does not match the number of factors");
    IntMat g(rs.rank, IntVec(rs.rank, 0));
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        const auto& fac = rs.factors[f];
        for (int a = 0; a < fac.type.rank; ++a)
            for (int b = 0; b < fac.type.rank; ++b)
                g[fac.offset + a][fac.offset + b] = k[f] * fac.gram[a][b];
    }
    return g;
}

/// B_k^flat: coweights to weights.
inline RatVec b_flat(const RootSystem& rs, const Level& k, const RatVec& xi) {
    if ((int)xi.size() != rs.rank) throw error("levelk", "coweight dimension mismatch");
    return mat_vec(gram_at_level(rs, k), xi);
}

inline IntVec b_flat(const RootSystem& rs, const Level& k, const IntVec& xi) {
    if ((int)xi.size() != rs.rank) throw error("levelk", "coweight dimension mismatch");
    return mat_vec(gram_at_level(rs, k), xi);
}

/// B_k^sharp: weights to coweights, inverse of b_flat. Requires all k_j != 0.
inline RatVec b_sharp(const RootSystem& rs, const Level& k, const RatVec& mu) {
    if ((int)mu.size() != rs.rank) throw error("levelk", "weight dimension mismatch");
    for (long kj : k)
        if (kj == 0) throw error("levelk", "singular form: zero level entry");
    return solve(to_rat_mat(gram_at_level(rs, k)), mu);
}

inline RatVec b_sharp(const RootSystem& rs, const Level& k, const IntVec& mu) {
    return b_sharp(rs, k, to_rat_vec(mu));
}

/// Order of the finite group T_k, as the index [B_k^sharp(weight lattice) : lattice].
inline Integer torus_group_order(const RootSystem& rs, const Level& k) {
    validate_level(rs, k);
    Integer d = determinant(gram_at_level(rs, k));
    return abs(d);
}

/// Is the dominant integral weight lambda at level k, i.e. <lambda, h_a0> <= k_j
/// on every factor?
inline bool is_level_weight(const RootSystem& rs, const Level& k, const IntVec& lambda) {
    if ((int)lambda.size() != rs.rank) return false;
    for (auto m : lambda)
        if (m < 0) return false;
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        const auto& fac = rs.factors[f];
        long long s = 0;
        for (int i = 0; i < fac.type.rank; ++i)
            s += lambda[fac.offset + i] * fac.highest_coroot[i];
        if (s > k[f]) return false;
    }
    return true;
}

/// All weights at level k, in lexicographic coordinate order.
inline std::vector<IntVec> level_weights(const RootSystem& rs, const Level& k) {
    validate_level(rs, k);
    std::vector<std::vector<IntVec>> per_factor;
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        const auto& fac = rs.factors[f];
        int n = fac.type.rank;
        std::vector<IntVec> acc{IntVec{}};
        for (int i = 0; i < n; ++i) {
            std::vector<IntVec> next;
            for (const auto& partial : acc) {
                for (long long m = 0; m <= k[f]; ++m) {
                    IntVec p = partial;
                    p.push_back(m);
                    next.push_back(std::move(p));
                }
            }
            acc = std::move(next);
        }
        std::vector<IntVec> kept;
        for (const auto& m : acc) {
            long long s = 0;
            for (int i = 0; i < n; ++i) s += m[i] * fac.highest_coroot[i];
            if (s <= k[f]) kept.push_back(m);
        }
        per_factor.push_back(std::move(kept));
    }
    std::vector<IntVec> out{IntVec{}};
    for (const auto& block : per_factor) {
        std::vector<IntVec> next;
        for (const auto& head : out)
            for (const auto& tail : block) {
                IntVec w = head;
                w.insert(w.end(), tail.begin(), tail.end());
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// A point t = exp(v) of the maximal torus, with v an exact rational coweight.
/// `order` is the least N such that every monomial t^mu with integral mu lies
/// in Q(zeta_N); `field_order` is the (multiple of `order`) ambient field in
/// which monomials are emitted, shared across a session so that sums over
/// several torus elements avoid repeated promotions.
struct TorusElement {
    RatVec v;
    long order = 1;
    long field_order = 1;

    /// Representative of v modulo the (co)root lattice, coordinates in [0,1).
    RatVec canonical_coords() const {
        RatVec c(v.size());
        for (size_t i = 0; i < v.size(); ++i) c[i] = frac_part(v[i]);
        return c;
    }
};

inline TorusElement make_torus_element(const RatVec& v, long field_order = 0) {
    TorusElement t;
    t.v = v;
    t.order = to_ll(denominator_lcm(v));
    t.field_order = t.order;
    if (field_order > 0) t.field_order = std::lcm(t.field_order, field_order);
    return t;
}

/// t is regular when no root pairs integrally with v.
inline bool is_regular(const RootSystem& rs, const TorusElement& t) {
    for (int idx : rs.positive_roots)
        if (is_integral(rs.root_eval(idx, t.v))) return false;
    return true;
}

/// One cyclotomic order for the whole session: the lcm of the coordinate
/// denominators of B_(k+c)^sharp(lambda + rho) over all level k weights.
inline long session_order(const RootSystem& rs, const Level& k) {
    Level kc = add_dual_coxeter(rs, k);
    Integer acc = 1;
    for (const auto& lambda : level_weights(rs, k)) {
        RatVec mu = to_rat_vec(lambda);
        for (int i = 0; i < rs.rank; ++i) mu[i] += 1;  // lambda + rho
        Integer l = denominator_lcm(b_sharp(rs, kc, mu));
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), l.get_mpz_t());
    }
    return to_ll(acc);
}

/// The distinguished regular element t_lambda = exp(B_(k+c)^sharp(lambda + rho)).
inline TorusElement t_lambda(const RootSystem& rs, const Level& k, const IntVec& lambda,
                             long field_order = 0) {
    validate_level(rs, k);
    if (!is_level_weight(rs, k, lambda)) throw error("levelk", "weight is not at level k");
    Level kc = add_dual_coxeter(rs, k);
    RatVec mu = to_rat_vec(lambda);
    for (int i = 0; i < rs.rank; ++i) mu[i] += 1;
    if (field_order == 0) field_order = session_order(rs, k);
    TorusElement t = make_torus_element(b_sharp(rs, kc, mu), field_order);
    if (!is_regular(rs, t))
        throw error("levelk", "internal: t_lambda failed the regularity guarantee");
    return t;
}

}  // namespace loopfix
