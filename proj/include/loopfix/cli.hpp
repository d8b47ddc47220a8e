#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>

#include "loopfix/selftest.hpp"
#include "loopfix/serialize.hpp"

namespace loopfix::cli {

/// Raised for bad flag combinations that CLI11 cannot express; exits with 2.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string vec_str(const IntVec& v) { return "[" + io::weight_key(v) + "]"; }

inline std::string vec_str(const RatVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

inline std::string shadow_str(const Cyclotomic& c) {
    std::ostringstream os;
    auto z = c.shadow();
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ")
       << std::abs(z.imag()) << "i";
    return os.str();
}

/// Exact value as a polynomial in z = exp(2 pi i / N), plus the float shadow.
inline std::string cyclotomic_str(const Cyclotomic& c) {
    std::ostringstream os;
    bool first = true;
    const auto& coeffs = c.coeffs();
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Rational q = coeffs[i];
        if (!first) {
            os << (q < 0 ? " - " : " + ");
            if (q < 0) q = -q;
        } else if (q < 0) {
            os << "-";
            q = -q;
        }
        if (q != 1 || i == 0) os << q.get_str();
        if (i > 0) {
            if (q != 1) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    os << "   (z = zeta_" << c.order() << ", shadow " << shadow_str(c) << ")";
    return os.str();
}

inline IntVec parse_weight(const std::string& text, const RootSystem& rs,
                           const std::string& flag) {
    try {
        return io::weight_from_key(text, rs.rank);
    } catch (const std::exception&) {
        throw error("cli", flag + ": cannot parse weight '" + text + "' for rank " +
                               std::to_string(rs.rank));
    }
}

}  // namespace detail

/// Parse and execute one invocation. Exit status 0 on success, 1 on a domain
/// error, 2 on a usage error. In json mode exactly one document is written to
/// the output stream.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact level k characters, fusion rings and fixed point multiplicities"};
    app.name("loopfix");
    app.require_subcommand(1);
    app.set_config("--config", "", "read default flag values from an INI file");

    std::string group, format = "text", model_path;
    std::vector<long> level;
    std::string mu_s, nu_s, rho_s, lambda_s;
    std::vector<std::string> insertion_s;
    long genus = 0;
    long long weyl_cap = 1000000;

    auto add_common = [&](CLI::App* sub, bool group_required) {
        auto* g = sub->add_option("--group", group, "group specifier, e.g. A1, G2, A1xA1");
        if (group_required) g->required();
        sub->add_option("--format", format, "output mode")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--weyl-cap", weyl_cap, "refuse Weyl groups larger than this");
        return sub;
    };
    auto add_level = [&](CLI::App* sub, bool required) {
        auto* l = sub->add_option("--level", level, "level, one integer per factor")
                      ->delimiter(',');
        if (required) l->required();
    };

    auto* roots_cmd = add_common(app.add_subcommand("roots", "root system summary"), true);
    auto* faces_cmd = add_common(app.add_subcommand("faces", "alcove faces and their data"), true);
    auto* levelk_cmd =
        add_common(app.add_subcommand("levelk", "level k weights and torus elements"), true);
    add_level(levelk_cmd, true);
    auto* char_cmd =
        add_common(app.add_subcommand("char", "evaluate a character at t_lambda"), true);
    add_level(char_cmd, true);
    char_cmd->add_option("--mu", mu_s, "dominant weight, comma separated coordinates")
        ->required();
    char_cmd->add_option("--lambda", lambda_s, "level k weight labelling t_lambda")->required();
    auto* fusion_cmd =
        add_common(app.add_subcommand("fusion", "fusion coefficients and products"), true);
    add_level(fusion_cmd, true);
    fusion_cmd->add_option("--mu", mu_s, "first factor");
    fusion_cmd->add_option("--nu", nu_s, "second factor");
    fusion_cmd->add_option("--rho", rho_s, "output weight (with --mu/--nu: one coefficient)");
    auto* verlinde_cmd = add_common(app.add_subcommand("verlinde", "Verlinde numbers"), true);
    add_level(verlinde_cmd, true);
    verlinde_cmd->add_option("--genus", genus, "genus of the surface")->required();
    verlinde_cmd->add_option("--insertions", insertion_s, "marked weights (repeatable)");
    auto* extract_cmd = add_common(
        app.add_subcommand("extract", "multiplicities from a fixed point model file"), false);
    add_level(extract_cmd, false);
    extract_cmd->add_option("--model", model_path, "model JSON file")->required();
    auto* selftest_cmd =
        add_common(app.add_subcommand("selftest", "run the built-in consistency suites"), false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    bool json_mode = format == "json";
    Integer cap((long)weyl_cap);

    try {
        if (app.got_subcommand(roots_cmd)) {
            RootSystem rs = build_root_system(parse_group_spec(group), cap);
            Integer worder = 1;
            for (const auto& f : rs.factors) worder *= weyl_order(f.type);
            if (json_mode) {
                io::json factors = io::json::array();
                for (const auto& f : rs.factors) {
                    io::json gram = io::json::array();
                    for (const auto& row : f.gram) gram.push_back(io::intvec_to_json(row));
                    factors.push_back(
                        {{"type", std::string(1, f.type.family) + std::to_string(f.type.rank)},
                         {"dual_coxeter", f.dual_coxeter},
                         {"highest_root", io::intvec_to_json(f.highest_root)},
                         {"marks", io::intvec_to_json(f.marks)},
                         {"gram", gram}});
                }
                out << io::json{{"group", rs.name},
                                {"rank", rs.rank},
                                {"roots", rs.roots.size()},
                                {"positive_roots", rs.positive_roots.size()},
                                {"weyl_order", worder.get_str()},
                                {"factors", factors}}
                           .dump(2)
                    << "\n";
            } else {
                out << "group " << rs.name << "  rank " << rs.rank << "\n";
                out << "roots " << rs.roots.size() << " (" << rs.positive_roots.size()
                    << " positive), |W| = " << worder.get_str() << "\n";
                for (const auto& f : rs.factors) {
                    out << "factor " << f.type.family << f.type.rank << ": dual Coxeter "
                        << f.dual_coxeter << ", highest root " << detail::vec_str(f.highest_root)
                        << ", marks " << detail::vec_str(f.marks) << "\n";
                }
            }
        } else if (app.got_subcommand(faces_cmd)) {
            RootSystem rs = build_root_system(parse_group_spec(group), cap);
            io::json records = io::json::array();
            for (const auto& face : faces(rs)) {
                FaceData fd = face_data(rs, face);
                if (json_mode) {
                    io::json gamma = io::json::array();
                    for (const auto& q : fd.gamma_sigma) gamma.push_back(io::rational_to_json(q));
                    records.push_back({{"face", face_name(rs, face)},
                                       {"gamma", gamma},
                                       {"roots", fd.r_sigma.size()},
                                       {"positive_roots", fd.r_plus_sigma.size()},
                                       {"weyl_order", fd.w_sigma.size()}});
                } else {
                    out << face_name(rs, face) << "  gamma = " << detail::vec_str(fd.gamma_sigma)
                        << "  |R_sigma| = " << fd.r_sigma.size()
                        << "  |W_sigma| = " << fd.w_sigma.size() << "\n";
                }
            }
            if (json_mode)
                out << io::json{{"group", rs.name}, {"faces", records}}.dump(2) << "\n";
        } else if (app.got_subcommand(levelk_cmd)) {
            RootSystem rs = build_root_system(parse_group_spec(group), cap);
            validate_level(rs, level);
            long field = session_order(rs, level);
            io::json records = io::json::array();
            for (const auto& lam : level_weights(rs, level)) {
                TorusElement t = t_lambda(rs, level, lam, field);
                Rational phase = dot(rs.rho(), t.v);
                if (json_mode) {
                    io::json v = io::json::array();
                    for (const auto& q : t.v) v.push_back(io::rational_to_json(q));
                    records.push_back({{"lambda", io::intvec_to_json(lam)},
                                       {"v", v},
                                       {"rho_pairing", io::rational_to_json(phase)}});
                } else {
                    out << "lambda = " << detail::vec_str(lam) << "  v = " << detail::vec_str(t.v)
                        << "  <rho,v> = " << phase.get_str() << "\n";
                }
            }
            if (json_mode)
                out << io::json{{"group", rs.name},
                                {"level", io::level_to_json(level)},
                                {"order", session_order(rs, level)},
                                {"weights", records}}
                           .dump(2)
                    << "\n";
        } else if (app.got_subcommand(char_cmd)) {
            RootSystem rs = build_root_system(parse_group_spec(group), cap);
            validate_level(rs, level);
            IntVec mu = detail::parse_weight(mu_s, rs, "--mu");
            IntVec lam = detail::parse_weight(lambda_s, rs, "--lambda");
            auto weyl = enumerate_weyl(rs, cap);
            TorusElement t = t_lambda(rs, level, lam);
            Cyclotomic value = weyl_character(rs, weyl, mu, t);
            if (json_mode) {
                auto z = value.shadow();
                out << io::json{{"group", rs.name},
                                {"level", io::level_to_json(level)},
                                {"mu", io::intvec_to_json(mu)},
                                {"lambda", io::intvec_to_json(lam)},
                                {"value", io::cyclotomic_to_json(value)},
                                {"shadow", io::json::array({z.real(), z.imag()})}}
                           .dump(2)
                    << "\n";
            } else {
                out << "chi_" << detail::vec_str(mu) << "(t_" << detail::vec_str(lam)
                    << ") = " << detail::cyclotomic_str(value) << "\n";
            }
        } else if (app.got_subcommand(fusion_cmd)) {
            RootSystem rs = build_root_system(parse_group_spec(group), cap);
            validate_level(rs, level);
            FusionRing ring(rs, level);
            if (!mu_s.empty() && !nu_s.empty() && !rho_s.empty()) {
                Integer c = ring.coefficient(detail::parse_weight(mu_s, rs, "--mu"),
                                             detail::parse_weight(nu_s, rs, "--nu"),
                                             detail::parse_weight(rho_s, rs, "--rho"));
                if (json_mode)
                    out << io::json{{"coefficient", c.get_si()}}.dump(2) << "\n";
                else
                    out << c.get_str() << "\n";
            } else if (!mu_s.empty() && !nu_s.empty()) {
                IntVec mu = detail::parse_weight(mu_s, rs, "--mu");
                IntVec nu = detail::parse_weight(nu_s, rs, "--nu");
                auto coeffs = ring.product(mu, nu);
                if (json_mode) {
                    io::json row = io::json::array();
                    for (const auto& c : coeffs) row.push_back(c.get_si());
                    io::json basis = io::json::array();
                    for (const auto& b : ring.basis()) basis.push_back(io::intvec_to_json(b));
                    out << io::json{{"basis", basis}, {"product", row}}.dump(2) << "\n";
                } else {
                    bool first = true;
                    for (size_t i = 0; i < coeffs.size(); ++i) {
                        if (coeffs[i] == 0) continue;
                        if (!first) out << " + ";
                        if (coeffs[i] != 1) out << coeffs[i].get_str() << "*";
                        out << "chi" << detail::vec_str(ring.basis()[i]);
                        first = false;
                    }
                    if (first) out << "0";
                    out << "\n";
                }
            } else if (mu_s.empty() && nu_s.empty() && rho_s.empty()) {
                if (json_mode) {
                    out << io::fusion_table_to_json(ring).dump(2) << "\n";
                } else {
                    for (const auto& mu : ring.basis())
                        for (const auto& nu : ring.basis()) {
                            if (nu < mu) continue;
                            out << detail::vec_str(mu) << " * " << detail::vec_str(nu) << " =";
                            auto coeffs = ring.product(mu, nu);
                            bool any = false;
                            for (size_t i = 0; i < coeffs.size(); ++i) {
                                if (coeffs[i] == 0) continue;
                                out << (any ? " + " : " ");
                                if (coeffs[i] != 1) out << coeffs[i].get_str() << "*";
                                out << "chi" << detail::vec_str(ring.basis()[i]);
                                any = true;
                            }
                            out << (any ? "" : " 0") << "\n";
                        }
                }
            } else {
                throw usage_error("fusion needs --mu and --nu (optionally --rho), or no weights"
                                  " for the full table");
            }
        } else if (app.got_subcommand(verlinde_cmd)) {
            RootSystem rs = build_root_system(parse_group_spec(group), cap);
            validate_level(rs, level);
            FusionRing ring(rs, level);
            std::vector<IntVec> insertions;
            for (const auto& s : insertion_s)
                insertions.push_back(detail::parse_weight(s, rs, "--insertions"));
            Integer v = ring.verlinde_number(genus, insertions);
            if (json_mode)
                out << io::json{{"group", rs.name},
                                {"level", io::level_to_json(level)},
                                {"genus", genus},
                                {"value", v.get_si()}}
                           .dump(2)
                    << "\n";
            else
                out << v.get_str() << "\n";
        } else if (app.got_subcommand(extract_cmd)) {
            std::ifstream file(model_path);
            if (!file) throw error("cli", "cannot open model file '" + model_path + "'");
            io::json doc = io::json::parse(file);
            FixedPointModel model = io::model_from_json(doc, cap);
            if (!group.empty()) {
                RootSystem flag_rs = build_root_system(parse_group_spec(group), cap);
                if (flag_rs.name != model.rs.name)
                    throw error("cli", "--group disagrees with the model file (" + flag_rs.name +
                                           " vs " + model.rs.name + ")");
            }
            if (!level.empty() && level != model.k)
                throw error("cli", "--level disagrees with the model file");
            MultiplicityTable table = extract_multiplicities(model);
            if (json_mode) {
                out << io::table_to_json(model.rs, model.k, table).dump(2) << "\n";
            } else {
                for (const auto& mu : table.basis)
                    out << "chi(M_" << detail::vec_str(mu)
                        << ") = " << table.values.at(mu).get_str() << "\n";
            }
        } else if (app.got_subcommand(selftest_cmd)) {
            auto reports = run_selftest(cap);
            bool all = true;
            if (json_mode) {
                io::json records = io::json::array();
                for (const auto& r : reports) {
                    records.push_back(
                        {{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
                    all = all && r.passed;
                }
                out << records.dump(2) << "\n";
            } else {
                for (const auto& r : reports) {
                    out << (r.passed ? "PASS " : "FAIL ") << r.name;
                    if (!r.passed) out << ": " << r.detail;
                    out << "\n";
                }
                for (const auto& r : reports) all = all && r.passed;
            }
            return all ? 0 : 1;
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace loopfix::cli
