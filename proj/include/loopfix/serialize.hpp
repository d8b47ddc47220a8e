#pragma once

#include <json.hpp>

#include "loopfix/engine.hpp"
#include "loopfix/fusion.hpp"

namespace loopfix::io {

using nlohmann::json;

inline json rational_to_json(const Rational& q) {
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
        throw error("io", "rational exceeds the file format range");
    return json::array({q.get_num().get_si(), q.get_den().get_si()});
}

inline Rational rational_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw error("io", "expected a [numerator, denominator] pair");
    return rat(j[0].get<long long>(), j[1].get<long long>());
}

/// {"N": order, "coeffs": [[num, den], ...]} with the canonical residue
/// coefficients modulo the N-th cyclotomic polynomial.
inline json cyclotomic_to_json(const Cyclotomic& c) {
    json coeffs = json::array();
    for (const auto& q : c.coeffs()) coeffs.push_back(rational_to_json(q));
    return json{{"N", c.order()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const json& j) {
    long n = j.at("N").get<long>();
    if (n < 1) throw error("io", "cyclotomic order must be positive");
    const json& coeffs = j.at("coeffs");
    if ((long)coeffs.size() > Cyclotomic::degree(n))
        throw error("io", "cyclotomic coefficient list longer than the field degree");
    Cyclotomic acc = Cyclotomic::zero();
    for (size_t i = 0; i < coeffs.size(); ++i)
        acc += rational_from_json(coeffs[i]) * Cyclotomic::root_of_unity(n, (long long)i);
    return acc.promoted(n);
}

inline json intvec_to_json(const IntVec& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

inline IntVec intvec_from_json(const json& j) {
    IntVec v;
    for (const auto& x : j) v.push_back(x.get<long long>());
    return v;
}

/// Weights appear as object keys in the comma-joined coordinate form "1,0".
inline std::string weight_key(const IntVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

inline IntVec weight_from_key(const std::string& key, int rank) {
    IntVec v;
    std::string token;
    for (char c : key) {
        if (c == ',') {
            v.push_back(std::stoll(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) v.push_back(std::stoll(token));
    if ((int)v.size() != rank) throw error("io", "weight key '" + key + "' has the wrong rank");
    return v;
}

inline json level_to_json(const Level& k) {
    json a = json::array();
    for (auto x : k) a.push_back(x);
    return a;
}

inline Level level_from_json(const json& j) {
    Level k;
    for (const auto& x : j) k.push_back(x.get<long>());
    return k;
}

// ---------------------------------------------------------------------------
// Fixed point model files.
// ---------------------------------------------------------------------------

inline json model_to_json(const FixedPointModel& model) {
    json entries = json::array();
    for (const auto& entry : model.entries) {
        if (const auto* iso = std::get_if<IsolatedFixedPoint>(&entry)) {
            json normals = json::array();
            for (const auto& b : iso->normal_weights.weights) normals.push_back(intvec_to_json(b));
            Integer den = denominator_lcm(iso->canonical_shift);
            json shift = json::array();
            for (const auto& q : iso->canonical_shift)
                shift.push_back(to_ll(Rational(q * Rational(den)).get_num()));
            entries.push_back(json{{"kind", "isolated"},
                                   {"line_weight", intvec_to_json(iso->line_weight)},
                                   {"normal_weights", normals},
                                   {"sign", iso->sign},
                                   {"canonical_shift", shift},
                                   {"shift_denominator", to_ll(den)}});
        } else {
            const auto& closed = std::get<ClosedContribution>(entry);
            json values = json::object();
            for (const auto& [lam, val] : closed.values)
                values[weight_key(lam)] = cyclotomic_to_json(val);
            entries.push_back(json{{"kind", "closed"}, {"values", values}});
        }
    }
    return json{{"group", model.rs.name}, {"level", level_to_json(model.k)}, {"entries", entries}};
}

inline FixedPointModel model_from_json(const json& j,
                                       const Integer& weyl_cap = Integer(1000000)) {
    FixedPointModel model;
    model.rs = build_root_system(parse_group_spec(j.at("group").get<std::string>()), weyl_cap);
    model.k = level_from_json(j.at("level"));
    validate_level(model.rs, model.k);
    for (const auto& e : j.at("entries")) {
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "isolated") {
            IsolatedFixedPoint iso;
            iso.line_weight = intvec_from_json(e.at("line_weight"));
            if ((int)iso.line_weight.size() != model.rs.rank)
                throw error("io", "line weight has the wrong rank");
            for (const auto& b : e.at("normal_weights")) {
                IntVec beta = intvec_from_json(b);
                if ((int)beta.size() != model.rs.rank)
                    throw error("io", "normal weight has the wrong rank");
                iso.normal_weights.weights.push_back(beta);
            }
            iso.sign = e.at("sign").get<int>();
            if (iso.sign != 1 && iso.sign != -1) throw error("io", "sign must be +1 or -1");
            long long den = e.value("shift_denominator", 1ll);
            if (den < 1) throw error("io", "shift denominator must be positive");
            for (const auto& num : e.at("canonical_shift"))
                iso.canonical_shift.push_back(rat(num.get<long long>(), den));
            if ((int)iso.canonical_shift.size() != model.rs.rank)
                throw error("io", "canonical shift has the wrong rank");
            model.entries.push_back(std::move(iso));
        } else if (kind == "closed") {
            ClosedContribution closed;
            for (const auto& [key, value] : e.at("values").items())
                closed.values[weight_from_key(key, model.rs.rank)] = cyclotomic_from_json(value);
            model.entries.push_back(std::move(closed));
        } else {
            throw error("io", "unknown entry kind '" + kind + "'");
        }
    }
    return model;
}

// ---------------------------------------------------------------------------
// Multiplicity tables (the `extract` output) and fusion tables.
// ---------------------------------------------------------------------------

inline json table_to_json(const RootSystem& rs, const Level& k, const MultiplicityTable& table) {
    json basis = json::array();
    for (const auto& mu : table.basis) basis.push_back(intvec_to_json(mu));
    json values = json::object();
    for (const auto& [mu, m] : table.values) {
        if (!m.fits_slong_p()) throw error("io", "multiplicity exceeds the file format range");
        values[weight_key(mu)] = m.get_si();
    }
    return json{
        {"group", rs.name}, {"level", level_to_json(k)}, {"basis", basis}, {"table", values}};
}

inline MultiplicityTable table_from_json(const json& j) {
    MultiplicityTable table;
    int rank = 0;
    for (const auto& mu : j.at("basis")) {
        table.basis.push_back(intvec_from_json(mu));
        rank = (int)table.basis.back().size();
    }
    for (const auto& [key, value] : j.at("table").items())
        table.values[weight_from_key(key, rank)] = Integer(value.get<long>());
    return table;
}

inline json fusion_table_to_json(const FusionRing& ring) {
    json basis = json::array();
    for (const auto& mu : ring.basis()) basis.push_back(intvec_to_json(mu));
    json table = json::object();
    for (const auto& mu : ring.basis())
        for (const auto& nu : ring.basis()) {
            json row = json::array();
            for (const auto& c : ring.product(mu, nu)) {
                if (!c.fits_slong_p()) throw error("io", "fusion coefficient out of range");
                row.push_back(c.get_si());
            }
            table[weight_key(mu) + ";" + weight_key(nu)] = row;
        }
    return json{{"group", ring.root_system().name},
                {"level", level_to_json(ring.level())},
                {"basis", basis},
                {"table", table}};
}

}  // namespace loopfix::io
