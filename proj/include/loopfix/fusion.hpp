#pragma once

#include <array>
#include <mutex>

#include "loopfix/characters.hpp"

namespace loopfix {

/// The level k fusion ring. Basis: the level k weights. Structure constants
/// come from the finite character sum over the regular elements t_lambda and
/// the orthogonality relations; there is deliberately no folding shortcut, so
/// the orthogonality machinery itself is load bearing.
///
/// Construction precomputes the t_lambda, the denominator norms |J(t_l)|^2
/// and the full character table chi_mu(t_lambda) over the basis. Coefficients
/// are filled lazily under a lock; the fill is idempotent.
class FusionRing {
public:
    FusionRing(const RootSystem& rs, const Level& k)
        : rs_(rs),
          k_(k),
          weyl_(enumerate_weyl(rs)),
          basis_(level_weights(rs, k)),
          kc_(add_dual_coxeter(rs, k)),
          order_(torus_group_order(rs, kc_)) {
        long field = session_order(rs_, k_);
        for (const auto& lam : basis_) {
            torus_.push_back(t_lambda(rs_, k_, lam, field));
            norm_sq_.push_back(denominator_norm_sq(rs_, weyl_, torus_.back()));
        }
        chi_.resize(basis_.size());
        for (size_t m = 0; m < basis_.size(); ++m) {
            chi_[m].reserve(basis_.size());
            for (size_t l = 0; l < basis_.size(); ++l)
                chi_[m].push_back(weyl_character(rs_, weyl_, basis_[m], torus_[l]));
        }
    }

    const RootSystem& root_system() const { return rs_; }
    const Level& level() const { return k_; }
    const std::vector<IntVec>& basis() const { return basis_; }
    const Integer& group_order() const { return order_; }
    const TorusElement& torus_element(size_t l) const { return torus_[l]; }
    const Cyclotomic& character(size_t mu, size_t lambda) const { return chi_[mu][lambda]; }
    const Cyclotomic& norm_sq(size_t lambda) const { return norm_sq_[lambda]; }

    size_t index_of(const IntVec& mu) const {
        auto it = std::lower_bound(basis_.begin(), basis_.end(), mu);
        if (it == basis_.end() || *it != mu)
            throw error("fusion", "weight is not in the level k basis");
        return (size_t)(it - basis_.begin());
    }

    /// mu* = -w0 mu, the highest weight of the dual module.
    IntVec conjugate_weight(const IntVec& mu) const {
        return neg(act(longest_element(weyl_), mu, Side::Weight));
    }

    /// N_(mu nu)^rho, an exact integer by the orthogonality relations.
    Integer coefficient(const IntVec& mu, const IntVec& nu, const IntVec& rho) const {
        size_t im = index_of(mu), in = index_of(nu), ir = index_of(rho);
        std::lock_guard lock(fill_mutex_);
        auto key = std::array<size_t, 3>{im, in, ir};
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
        Cyclotomic sum = Cyclotomic::zero();
        for (size_t l = 0; l < basis_.size(); ++l)
            sum += norm_sq_[l] * chi_[im][l] * chi_[in][l] * chi_[ir][l].conj();
        Rational value = sum.require_rational("fusion") / Rational(order_);
        if (!is_integral(value))
            throw error("fusion", "non-integer fusion coefficient " + value.get_str());
        return table_.emplace(key, value.get_num()).first->second;
    }

    /// The fusion product mu * nu as a coefficient vector over the basis.
    std::vector<Integer> product(const IntVec& mu, const IntVec& nu) const {
        std::vector<Integer> out;
        out.reserve(basis_.size());
        for (const auto& rho : basis_) out.push_back(coefficient(mu, nu, rho));
        return out;
    }

    /// Verlinde number for genus g with marked insertions:
    /// sum over lambda of (#T_(k+c) / |J(t_lambda)|^2)^(g-1) prod_i chi_(mu_i).
    Integer verlinde_number(long genus, const std::vector<IntVec>& insertions) const {
        if (genus < 0) throw error("fusion", "genus must be nonnegative");
        std::vector<size_t> idx;
        for (const auto& mu : insertions) idx.push_back(index_of(mu));
        Cyclotomic sum = Cyclotomic::zero();
        Cyclotomic order = Cyclotomic(Rational(order_));
        for (size_t l = 0; l < basis_.size(); ++l) {
            Cyclotomic term = (order / norm_sq_[l]).pow(genus - 1);
            for (size_t i : idx) term *= chi_[i][l];
            sum += term;
        }
        Rational value = sum.require_rational("verlinde");
        if (!is_integral(value))
            throw error("verlinde", "non-integer Verlinde number " + value.get_str());
        return value.get_num();
    }

private:
    RootSystem rs_;
    Level k_;
    std::vector<WeylElement> weyl_;
    std::vector<IntVec> basis_;
    Level kc_;
    Integer order_;
    std::vector<TorusElement> torus_;
    std::vector<Cyclotomic> norm_sq_;
    std::vector<std::vector<Cyclotomic>> chi_;

    mutable std::mutex fill_mutex_;
    mutable std::map<std::array<size_t, 3>, Integer> table_;
};

inline Integer fusion_coefficient(const FusionRing& ring, const IntVec& mu, const IntVec& nu,
                                  const IntVec& rho) {
    return ring.coefficient(mu, nu, rho);
}

inline std::vector<Integer> fusion_product(const FusionRing& ring, const IntVec& mu,
                                           const IntVec& nu) {
    return ring.product(mu, nu);
}

inline Integer verlinde_number(const FusionRing& ring, long genus,
                               const std::vector<IntVec>& insertions) {
    return ring.verlinde_number(genus, insertions);
}

}  // namespace loopfix
