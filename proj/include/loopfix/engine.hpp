#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <variant>

#include "loopfix/alcove.hpp"
#include "loopfix/characters.hpp"

namespace loopfix {

/// Contribution of an isolated fixed point. The square-root bookkeeping is
/// carried structurally as (line weight, sign, canonical shift) rather than
/// as a bare scalar, so it can be rebuilt from cross-section data and checked
/// for well-definedness.
struct IsolatedFixedPoint {
    IntVec line_weight;             // t acts on the line by t^line_weight
    WeightedAction normal_weights;  // complex weights of the normal directions
    int sign = 1;                   // the (-1)^(epsilon(w,sigma)+l(w)) factor
    RatVec canonical_shift;         // the w(rho - rho_sigma) shift (denominator 1 or 2)
};

/// Per-lambda table of already-integrated contribution values, the carrier
/// for fixed manifolds of positive dimension.
struct ClosedContribution {
    std::map<IntVec, Cyclotomic> values;  // keyed by lambda coordinates
};

using ModelEntry = std::variant<IsolatedFixedPoint, ClosedContribution>;

/// Fixed point data describing the sum over components of chi(nu_F, t).
struct FixedPointModel {
    RootSystem rs;
    Level k;
    std::vector<ModelEntry> entries;
};

struct MultiplicityTable {
    std::vector<IntVec> basis;          // the level k weights, sorted
    std::map<IntVec, Integer> values;   // mu -> multiplicity

    friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;
};

/// Thread budget: LOOPFIX_THREADS caps parallelism, 0 or unset means auto.
inline unsigned thread_budget() {
    long n = 0;
    if (const char* env = std::getenv("LOOPFIX_THREADS")) n = std::strtol(env, nullptr, 10);
    if (n <= 0) n = (long)std::thread::hardware_concurrency();
    return n < 1 ? 1u : (unsigned)n;
}

/// Index-parallel loop with deterministic output: fn(i) must write only to
/// slot i of a preallocated result. Exceptions are rethrown on the caller.
template <typename F>
inline void parallel_for(size_t count, F&& fn) {
    unsigned threads = std::min<size_t>(thread_budget(), count);
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned th = 0; th < threads; ++th)
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

/// Recover the level k weight labelling t: lambda = B_(k+c)^flat(v) - rho.
inline IntVec lambda_of(const FixedPointModel& model, const TorusElement& t) {
    RatVec mu = b_flat(model.rs, add_dual_coxeter(model.rs, model.k), t.v);
    for (int i = 0; i < model.rs.rank; ++i) mu[i] -= 1;
    if (!is_integral(mu))
        throw error("engine", "torus element is not one of the distinguished t_lambda");
    IntVec lambda = to_int_vec(mu);
    if (!is_level_weight(model.rs, model.k, lambda))
        throw error("engine", "torus element labels a weight outside the level");
    return lambda;
}

/// chi(nu_F, t) for one model entry. For isolated points both equivalent
/// forms are computed, the square-root form zeta^(1/2)/D_R and the
/// Atiyah-Bott form with the same phase over D_C, and asserted equal.
inline Cyclotomic contribution_at(const FixedPointModel& model, const ModelEntry& entry,
                                  const TorusElement& t) {
    if (const auto* iso = std::get_if<IsolatedFixedPoint>(&entry)) {
        for (const auto& beta : iso->normal_weights.weights)
            if (is_integral(dot(beta, t.v)))
                throw error("engine", "degenerate normal weight: fixed point not isolated at t");
        Cyclotomic phase = weight_monomial(t, iso->line_weight) *
                           rational_monomial(t, iso->canonical_shift);
        if (iso->sign < 0) phase = -phase;
        Cyclotomic root = sqrt_det(iso->normal_weights, t);
        Cyclotomic lefschetz = (phase * root) / dr_real(iso->normal_weights, t);
        Cyclotomic atiyah_bott = phase / dc_complex(iso->normal_weights, t);
        if (lefschetz != atiyah_bott)
            throw error("engine", "internal: square-root and Atiyah-Bott forms disagree");
        return lefschetz;
    }
    const auto& closed = std::get<ClosedContribution>(entry);
    IntVec lambda = lambda_of(model, t);
    auto it = closed.values.find(lambda);
    if (it == closed.values.end())
        throw error("engine", "closed contribution has no value for this lambda");
    return it->second;
}

/// Sum of all fixed point contributions at a regular t.
inline Cyclotomic evaluate_model(const FixedPointModel& model, const TorusElement& t) {
    if (!is_regular(model.rs, t)) throw error("engine", "model evaluated at an irregular point");
    Cyclotomic sum = Cyclotomic::zero();
    for (const auto& entry : model.entries) sum += contribution_at(model, entry, t);
    return sum;
}

/// The finite Fourier transform extracting all multiplicities:
/// chi(M_mu) = (1/#T_(k+c)) sum over lambda of
///             chi_mu(t_lambda)^* |J(t_lambda)|^2 (sum of contributions).
/// Every entry must come out an exact integer; anything else means the model
/// is not consistent fixed point data and raises an error naming mu.
inline MultiplicityTable extract_multiplicities(const FixedPointModel& model) {
    const RootSystem& rs = model.rs;
    validate_level(rs, model.k);
    auto weyl = enumerate_weyl(rs);
    auto weights = level_weights(rs, model.k);
    long field = session_order(rs, model.k);
    Integer order = torus_group_order(rs, add_dual_coxeter(rs, model.k));

    // per-lambda data, computed in parallel, merged in lambda order
    std::vector<Cyclotomic> weighted_value(weights.size());
    std::vector<std::vector<Cyclotomic>> chi_conj(weights.size());
    parallel_for(weights.size(), [&](size_t l) {
        TorusElement t = t_lambda(rs, model.k, weights[l], field);
        weighted_value[l] = denominator_norm_sq(rs, weyl, t) * evaluate_model(model, t);
        chi_conj[l].reserve(weights.size());
        for (const auto& mu : weights)
            chi_conj[l].push_back(weyl_character(rs, weyl, mu, t).conj());
    });

    MultiplicityTable table;
    table.basis = weights;
    for (size_t m = 0; m < weights.size(); ++m) {
        Cyclotomic sum = Cyclotomic::zero();
        for (size_t l = 0; l < weights.size(); ++l) sum += chi_conj[l][m] * weighted_value[l];
        auto exact = sum.to_rational();
        Rational value;
        if (exact) value = *exact / Rational(order);
        if (!exact || !is_integral(value)) {
            std::ostringstream os;
            os << "non-integer multiplicity at mu = [";
            for (size_t i = 0; i < weights[m].size(); ++i)
                os << (i ? "," : "") << weights[m][i];
            os << "] (residue " << sum.shadow().real() / order.get_d() << " + "
               << sum.shadow().imag() / order.get_d() << "i)";
            throw error("engine", os.str());
        }
        table.values[weights[m]] = value.get_num();
    }
    return table;
}

/// Conversion between the contribution over a cross-section labelled by
/// (w, sigma) and the full contribution:
/// chi(nu_F, t) = chi(nu_F^(w sigma), t) * D_C(g_sigma/t, w^-1 t) / D_C(g/t, w^-1 t).
/// For the vertex face at the origin the two root sets coincide and the
/// conversion is the identity.
inline Cyclotomic cross_section_convert(const RootSystem& rs, const FaceData& fd,
                                        const WeylElement& w, const Cyclotomic& value,
                                        const TorusElement& t) {
    if (!is_regular(rs, t))
        throw error("engine", "cross-section conversion at an irregular point");
    TorusElement t1 = torus_translate(rs, w, t);
    return value * dc_complex(roots_action(rs, fd.r_plus_sigma), t1) /
           dc_complex(roots_action(rs, rs.positive_roots), t1);
}

/// The built-in coadjoint orbit model for nu at level k: the cross-section
/// through B_k^sharp(nu) is a single point, and each coset representative
/// contributes the closed value t^(w nu) D_C(g_sigma/t, w^-1 t)/D_C(g/t, w^-1 t).
inline FixedPointModel coadjoint_orbit_model(const RootSystem& rs, const Level& k,
                                             const IntVec& nu) {
    validate_level(rs, k);
    if (!is_level_weight(rs, k, nu)) throw error("engine", "weight is not at level k");
    FixedPointModel model{rs, k, {}};
    AlcoveFace sigma = face_of(rs, b_sharp(rs, k, nu));
    FaceData fd = face_data(rs, sigma);
    auto weyl = enumerate_weyl(rs);
    auto reps = coset_representatives(rs, weyl, fd);
    auto weights = level_weights(rs, k);
    long field = session_order(rs, k);
    for (const auto& w : reps) {
        ClosedContribution entry;
        IntVec w_nu = act(w, nu, Side::Weight);
        for (const auto& lam : weights) {
            TorusElement t = t_lambda(rs, k, lam, field);
            entry.values[lam] = cross_section_convert(rs, fd, w, weight_monomial(t, w_nu), t);
        }
        model.entries.push_back(std::move(entry));
    }
    return model;
}

}  // namespace loopfix
