#pragma once

#include <functional>

#include "loopfix/engine.hpp"
#include "loopfix/fusion.hpp"

namespace loopfix {

struct SuiteReport {
    std::string name;
    bool passed = false;
    std::string detail;  // failure description, empty on success
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw error("selftest", what);
}

}  // namespace detail

/// Both orthogonality relations of the level k characters on the elements
/// t_lambda: rows sum to #T_(k+c) delta_(mu mu') and columns to
/// #T_(k+c) delta_(lambda lambda').
inline void check_orthogonality(const RootSystem& rs, const Level& k) {
    FusionRing ring(rs, k);
    size_t n = ring.basis().size();
    Cyclotomic order{Rational(ring.group_order())};
    for (size_t m = 0; m < n; ++m)
        for (size_t m2 = 0; m2 < n; ++m2) {
            Cyclotomic sum = Cyclotomic::zero();
            for (size_t l = 0; l < n; ++l)
                sum += ring.norm_sq(l) * ring.character(m, l) * ring.character(m2, l).conj();
            detail::require(sum == (m == m2 ? order : Cyclotomic::zero()),
                            "character orthogonality failed for " + rs.name);
        }
    for (size_t l = 0; l < n; ++l)
        for (size_t l2 = 0; l2 < n; ++l2) {
            Cyclotomic sum = Cyclotomic::zero();
            for (size_t m = 0; m < n; ++m)
                sum += ring.norm_sq(l) * ring.character(m, l) * ring.character(m, l2).conj();
            detail::require(sum == (l == l2 ? order : Cyclotomic::zero()),
                            "dual orthogonality failed for " + rs.name);
        }
}

/// The restriction identity: for every face sigma, weight mu at level k and
/// every t_lambda,
/// chi_mu(t) = sum over W/W_sigma of chi_(mu,sigma)(w^-1 t) D_C ratio.
inline void check_restriction_identity(const RootSystem& rs, const Level& k) {
    auto weyl = enumerate_weyl(rs);
    auto weights = level_weights(rs, k);
    long field = session_order(rs, k);
    WeightedAction full = roots_action(rs, rs.positive_roots);
    for (const auto& face : faces(rs)) {
        auto fd = face_data(rs, face);
        auto reps = coset_representatives(rs, weyl, fd);
        detail::require(reps.size() * fd.w_sigma.size() == weyl.size(),
                        "coset count failed for " + rs.name + " face " + face_name(rs, face));
        WeightedAction part = roots_action(rs, fd.r_plus_sigma);
        for (const auto& mu : weights)
            for (const auto& lam : weights) {
                TorusElement t = t_lambda(rs, k, lam, field);
                Cyclotomic sum = Cyclotomic::zero();
                for (const auto& w : reps) {
                    TorusElement t1 = torus_translate(rs, w, t);
                    sum += restricted_character(rs, fd, mu, t1) * dc_complex(part, t1) /
                           dc_complex(full, t1);
                }
                detail::require(sum == weyl_character(rs, weyl, mu, t),
                                "restriction identity failed for " + rs.name + " face " +
                                    face_name(rs, face));
            }
    }
}

/// gamma_sigma lies on its open face, for every face of the alcove.
inline void check_gamma_membership(const RootSystem& rs) {
    for (const auto& face : faces(rs)) {
        auto fd = face_data(rs, face);
        detail::require(face_contains(rs, face, fd.gamma_sigma),
                        "gamma escaped its face for " + rs.name + " " + face_name(rs, face));
    }
}

/// The built-in coadjoint orbit models evaluate to the characters and
/// extract to delta tables.
inline void check_coadjoint_delta(const RootSystem& rs, const Level& k) {
    auto weyl = enumerate_weyl(rs);
    auto weights = level_weights(rs, k);
    long field = session_order(rs, k);
    for (const auto& nu : weights) {
        auto model = coadjoint_orbit_model(rs, k, nu);
        for (const auto& lam : weights) {
            TorusElement t = t_lambda(rs, k, lam, field);
            detail::require(evaluate_model(model, t) == weyl_character(rs, weyl, nu, t),
                            "coadjoint evaluation mismatch for " + rs.name);
        }
        auto table = extract_multiplicities(model);
        for (const auto& mu : weights)
            detail::require(table.values.at(mu) == (mu == nu ? 1 : 0),
                            "coadjoint extraction is not a delta for " + rs.name);
    }
}

/// The built-in consistency suites at quick desk scale. A tight Weyl cap
/// surfaces as a failing suite with the cap message.
inline std::vector<SuiteReport> run_selftest(const Integer& weyl_cap = Integer(1000000)) {
    auto guard = [](const std::string& name, const std::function<void()>& body) {
        SuiteReport r{name, false, ""};
        try {
            body();
            r.passed = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        return r;
    };
    auto build = [&](const std::string& spec) {
        return build_root_system(parse_group_spec(spec), weyl_cap);
    };

    std::vector<SuiteReport> out;
    out.push_back(guard("orthogonality", [&] {
        for (long k = 1; k <= 3; ++k) check_orthogonality(build("A1"), {k});
        for (long k = 1; k <= 2; ++k) check_orthogonality(build("A2"), {k});
        check_orthogonality(build("A1xA1"), {2, 2});
    }));
    out.push_back(guard("restriction-identity", [&] {
        for (long k = 1; k <= 2; ++k) check_restriction_identity(build("A1"), {k});
        check_restriction_identity(build("A2"), {1});
    }));
    out.push_back(guard("gamma-membership", [&] {
        for (const std::string spec :
             {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "A1xB2", "A1xA1xA1"})
            check_gamma_membership(build(spec));
    }));
    out.push_back(guard("coadjoint-delta", [&] {
        for (long k = 1; k <= 2; ++k) check_coadjoint_delta(build("A1"), {k});
        check_coadjoint_delta(build("A2"), {1});
    }));
    return out;
}

}  // namespace loopfix
