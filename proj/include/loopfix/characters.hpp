#pragma once

#include "loopfix/alcove.hpp"
#include "loopfix/cyclotomic.hpp"
#include "loopfix/level.hpp"

namespace loopfix {

/// The complex weights of a torus action on a finite dimensional complex
/// vector space; t = exp(v) acts with eigenvalue exp(2 pi i <beta, v>) on the
/// line of weight beta. A multiset: repeated weights are repeated lines.
struct WeightedAction {
    std::vector<IntVec> weights;

    size_t rank() const { return weights.size(); }
};

/// exp(2 pi i q), emitted in a field containing both the session order and
/// the exponent denominator.
inline Cyclotomic phase_in_field(const Rational& q, long field_order) {
    long den = to_ll(Integer(q.get_den()));
    long f = std::lcm(std::max(field_order, 1l), den);
    Integer num = q.get_num() * (f / den);
    Integer rem = num % f;
    return Cyclotomic::root_of_unity(f, to_ll(rem));
}

/// t^mu = exp(2 pi i <mu, v>) for an integral weight mu.
inline Cyclotomic weight_monomial(const TorusElement& t, const IntVec& mu) {
    if ((int)mu.size() != (int)t.v.size()) throw error("characters", "weight dimension mismatch");
    return phase_in_field(dot(mu, t.v), t.field_order);
}

/// t^mu for a rational weight mu (used by the half-integral canonical shifts;
/// the value depends on the representative v, not only on exp(v)).
inline Cyclotomic rational_monomial(const TorusElement& t, const RatVec& mu) {
    if ((int)mu.size() != (int)t.v.size()) throw error("characters", "weight dimension mismatch");
    return phase_in_field(dot(mu, t.v), t.field_order);
}

/// Weyl denominator J(t) = sum over W of (-1)^l(w) t^(w rho).
inline Cyclotomic weyl_denominator(const RootSystem& rs, const std::vector<WeylElement>& weyl,
                                   const TorusElement& t) {
    Cyclotomic j = Cyclotomic::zero();
    IntVec rho = rs.rho();
    for (const auto& w : weyl) {
        Cyclotomic term = weight_monomial(t, act(w, rho, Side::Weight));
        j += (w.length() % 2 == 0) ? term : -term;
    }
    return j;
}

/// |J(t)|^2 = J(t) conj(J(t)); vanishes exactly at irregular t.
inline Cyclotomic denominator_norm_sq(const RootSystem& rs, const std::vector<WeylElement>& weyl,
                                      const TorusElement& t) {
    Cyclotomic j = weyl_denominator(rs, weyl, t);
    return j * j.conj();
}

/// Weyl character formula at a regular point:
/// chi_mu(t) = [sum (-1)^l(w) t^(w(mu+rho))] / J(t).
inline Cyclotomic weyl_character(const RootSystem& rs, const std::vector<WeylElement>& weyl,
                                 const IntVec& mu, const TorusElement& t) {
    if ((int)mu.size() != rs.rank) throw error("characters", "weight dimension mismatch");
    for (auto m : mu)
        if (m < 0) throw error("characters", "character weight must be dominant");
    if (!is_regular(rs, t))
        throw error("characters", "character evaluation at an irregular point");
    IntVec shifted = add(mu, rs.rho());
    Cyclotomic num = Cyclotomic::zero();
    for (const auto& w : weyl) {
        Cyclotomic term = weight_monomial(t, act(w, shifted, Side::Weight));
        num += (w.length() % 2 == 0) ? term : -term;
    }
    return num / weyl_denominator(rs, weyl, t);
}

/// D_C of the action: product over the weights of (1 - t^(-beta)).
inline Cyclotomic dc_complex(const WeightedAction& action, const TorusElement& t) {
    Cyclotomic d = Cyclotomic::one();
    for (const auto& beta : action.weights) d *= Cyclotomic::one() - weight_monomial(t, neg(beta));
    return d;
}

/// Determinant of the principal square root of the action of t: each
/// eigenvalue exp(2 pi i f) with f in [0,1) contributes exp(pi i f), the
/// unique square root with argument in [0, pi).
inline Cyclotomic sqrt_det(const WeightedAction& action, const TorusElement& t) {
    Cyclotomic d = Cyclotomic::one();
    for (const auto& beta : action.weights) {
        Rational f = frac_part(dot(beta, t.v));
        d *= phase_in_field(f / 2, t.field_order);
    }
    return d;
}

/// D_R at an isolated fixed point, defined through the exact identity
/// D_C = D_R kappa^(1/2) with kappa^(-1/2) = det of the principal square
/// root; equivalently D_R = D_C * sqrt_det.
inline Cyclotomic dr_real(const WeightedAction& action, const TorusElement& t) {
    return dc_complex(action, t) * sqrt_det(action, t);
}

/// An affine Weyl element t_xi * w1: first the finite part, then translation
/// by the lattice vector xi (coroot coordinates).
struct AffineWeyl {
    WeylElement finite;
    IntVec translation;

    static AffineWeyl identity(const RootSystem& rs) {
        return {weyl_identity(rs), IntVec(rs.rank, 0)};
    }
    static AffineWeyl from_finite(const WeylElement& w, int rank) {
        return {w, IntVec(rank, 0)};
    }
    static AffineWeyl from_translation(const RootSystem& rs, const IntVec& xi) {
        return {weyl_identity(rs), xi};
    }

    RatVec apply(const RatVec& x) const {
        RatVec y = act(finite, x, Side::Coweight);
        for (size_t i = 0; i < y.size(); ++i) y[i] += rat(translation[i]);
        return y;
    }
};

inline AffineWeyl compose(const RootSystem& rs, const AffineWeyl& a, const AffineWeyl& b) {
    // (t_xi w1)(t_eta u1) = t_(xi + w1 eta) (w1 u1)
    AffineWeyl c;
    c.finite = compose(rs, a.finite, b.finite);
    c.translation = add(a.translation, act(a.finite, b.translation, Side::Coweight));
    return c;
}

/// The affine reflection in wall `wall` (per-factor index; wall 0 is the
/// affine wall alpha_0(xi) = 1) of the factor f alcove.
inline AffineWeyl wall_reflection(const RootSystem& rs, int f, int wall) {
    const auto& fac = rs.factors[f];
    if (wall == 0) {
        int hr_index = -1;
        for (int idx : rs.positive_roots) {
            const Root& r = rs.roots[idx];
            if (r.factor == f && r.height > (hr_index < 0 ? -1 : rs.roots[hr_index].height))
                hr_index = idx;
        }
        AffineWeyl a;
        a.finite = reflection_in_root(rs, hr_index);
        a.translation = rs.roots[hr_index].coroot;  // x -> s_a0(x) + h_a0
        return a;
    }
    int j = fac.offset + wall - 1;
    auto [mw, mc] = simple_reflection_matrices(rs, j);
    AffineWeyl a;
    a.finite = element_from_matrices(rs, mw, mc);
    a.translation = IntVec(rs.rank, 0);
    return a;
}

/// The affine action at level c on weights: t_xi w1 sends mu to
/// w1(mu) + B_c^flat(xi).
inline RatVec level_weight_action(const RootSystem& rs, const Level& c, const AffineWeyl& w,
                                  const RatVec& mu) {
    RatVec out = act(w.finite, mu, Side::Weight);
    return add(out, b_flat(rs, c, to_rat_vec(w.translation)));
}

/// Number of roots alpha in R_{+,sigma} with <w1 alpha, v> < 0, for w1 the
/// finite part of an affine Weyl element. Requires v in the star W * alcove
/// and strict signs throughout; ties mean t = exp(v) is not regular enough.
inline long epsilon(const RootSystem& rs, const FaceData& fd, const WeylElement& w1,
                    const RatVec& v) {
    if (!in_closed_alcove(rs, dominant_representative(rs, v)))
        throw error("characters", "epsilon: v is not in the star of the alcove");
    long count = 0;
    for (int idx : fd.r_plus_sigma) {
        Rational val = dot(act(w1, rs.roots[idx].weight, Side::Weight), v);
        if (val == 0) throw error("characters", "epsilon: tie <w alpha, v> = 0");
        if (val < 0) ++count;
    }
    return count;
}

/// The locally constant data entering the canonical square root over the
/// cross-section labelled by (w, sigma): the sign (-1)^(epsilon(w,sigma)+l(w))
/// and the level-c shift w(rho - rho_sigma). Translations have even length,
/// so only the finite part contributes to the parity.
struct SqrtFactor {
    int sign = 1;    // +1 or -1
    RatVec shift;    // rational weight, possibly half-integral

    Cyclotomic phase(const TorusElement& t) const {
        Cyclotomic p = rational_monomial(t, shift);
        return sign > 0 ? p : -p;
    }
};

inline SqrtFactor canonical_sqrt_factor(const RootSystem& rs, const FaceData& fd,
                                        const AffineWeyl& w, const RatVec& v) {
    long eps = epsilon(rs, fd, w.finite, v);
    SqrtFactor s;
    s.sign = (eps + w.finite.length()) % 2 == 0 ? 1 : -1;
    RatVec diff = sub(to_rat_vec(rs.rho()), fd.rho_sigma);
    s.shift = level_weight_action(rs, rs.dual_coxeter(), w, diff);
    return s;
}

/// The WeightedAction of the torus on g_sigma/t (weights R_{+,sigma}) or on
/// g/t (weights R_+), the denominators of the restriction identity.
inline WeightedAction roots_action(const RootSystem& rs, const std::vector<int>& root_indices) {
    WeightedAction a;
    for (int idx : root_indices) a.weights.push_back(rs.roots[idx].weight);
    return a;
}

/// Character of the centralizer of the face sigma with highest weight mu at
/// level k, restricted to elements t1 of T_(k+c):
/// chi_(mu,sigma)(t1) = [sum over W_sigma of (-1)^l(w1) t1^(w1(mu+rho)-rho)]
///                      / D_C(g_sigma/t, t1).
/// At such t1 the gamma_sigma monomial of the affine action drops, which is
/// what makes this finite expression the exact restriction.
inline Cyclotomic restricted_character(const RootSystem& rs, const FaceData& fd, const IntVec& mu,
                                       const TorusElement& t1) {
    for (int idx : fd.r_plus_sigma)
        if (is_integral(rs.root_eval(idx, t1.v)))
            throw error("characters", "restricted character at a point irregular for the face");
    IntVec shifted = add(mu, rs.rho());
    Cyclotomic num = Cyclotomic::zero();
    for (const auto& w1 : fd.w_sigma) {
        IntVec e = sub(act(w1, shifted, Side::Weight), rs.rho());
        Cyclotomic term = weight_monomial(t1, e);
        num += (w1.length() % 2 == 0) ? term : -term;
    }
    return num / dc_complex(roots_action(rs, fd.r_plus_sigma), t1);
}

/// Translate of a torus element by a Weyl element: w^-1 t = exp(w^-1 v).
inline TorusElement torus_translate(const RootSystem& rs, const WeylElement& w_inverse_of,
                                    const TorusElement& t) {
    TorusElement out = t;
    out.v = act(inverse(rs, w_inverse_of), t.v, Side::Coweight);
    return out;
}

}  // namespace loopfix
