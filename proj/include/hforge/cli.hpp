/*
   Copyright 2026 The hermite-forge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HFORGE_CLI_HPP
#define HFORGE_CLI_HPP

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "construct.hpp"
#include "factor.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "splines.hpp"

namespace hforge::cli {

/// Exit codes: all requested checks passed, a check failed, malformed input.
enum exit_code : int { exit_ok = 0, exit_failed = 1, exit_malformed = 2 };

struct CommandConfig {
    std::string command;
    std::string input, mask, chain, taylor, config, out;
    std::string hdd, preset_g = "none", method, closure = "printed", init = "delta", format = "json", scale;
    int levels = 8, component = 0, n_max = 0, r = 0, d = 0;
    long radius = 4;
    double sup_tol = 1e-6, residual_tol = 1e-4, ratio = 0.9;
    std::uint64_t seed = 20240607;
    bool verify = false;
};

/// Report skeleton shared by every subcommand.
class Report {
public:
    explicit Report(std::string command) { j_["command"] = std::move(command); j_["ok"] = true; j_["checks"] = json::array(); }

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        json c{{"name", name}, {"ok", ok}};
        if (!detail.empty()) c["detail"] = detail;
        j_["checks"].push_back(c);
        if (!ok) j_["ok"] = false;
    }
    json& result() { return j_["result"]; }
    bool ok() const { return j_["ok"].get<bool>(); }
    json& raw() { return j_; }

private:
    json j_;
};

// ---- input resolution -----------------------------------------------------

/// A mask file, or a preset name "spline:r=R,d=D".
inline Mask load_mask(const std::string& source) {
    if (source.rfind("spline:", 0) == 0) {
        int r = -1, d = -1;
        char tail = 0;
        if (std::sscanf(source.c_str(), "spline:r=%d,d=%d%c", &r, &d, &tail) != 2) fail(errc::parse_error, "preset '" + source + "' is not of the form spline:r=R,d=D");
        return spline_hermite_mask(r, d);
    }
    return mask_from_json(read_json_file(source));
}

/// A Taylor operator file, or one of the names delta:D, classical:D, spline:D.
inline TaylorOperator load_taylor(const std::string& source) {
    const auto colon = source.find(':');
    if (colon != std::string::npos && source.find('.') == std::string::npos) {
        const std::string kind = source.substr(0, colon);
        int d = -1;
        try {
            d = std::stoi(source.substr(colon + 1));
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad order in '" + source + "'");
        }
        if (d < 0) fail(errc::bad_order, "order must be nonnegative");
        if (kind == "delta") return taylor_delta(d);
        if (kind == "classical") return taylor_classical(d);
        if (kind == "spline") return taylor_spline(d);
        fail(errc::parse_error, "unknown Taylor operator family '" + kind + "'");
    }
    return taylor_from_json(read_json_file(source));
}

inline json spectral_json(const SpectralVerdict& v) {
    json members = json::array();
    for (std::size_t j = 0; j < v.members.size(); ++j) {
        json m{{"j", j}, {"ok", v.members[j].ok}};
        if (!v.members[j].ok) m["detail"] = v.members[j].detail;
        members.push_back(m);
    }
    return members;
}

inline void add_spectral_checks(Report& rep, const SpectralVerdict& v) {
    for (std::size_t j = 0; j < v.members.size(); ++j)
        rep.check("eigenvector for 2^-" + std::to_string(j), v.members[j].ok, v.members[j].detail);
}

inline json contractivity_json(const ContractivityReport& c) {
    json norms = json::array(), roots = json::array();
    for (const auto& n : c.norms) norms.push_back(n.str());
    for (double v : c.root_norms) roots.push_back(v);
    json o{{"contractive", c.contractive},  {"n_star", c.n_star},          {"general_n_star", c.general_n_star},
           {"general_contractive", c.general_contractive}, {"lower_triangular", c.lower_triangular}, {"norms", norms},
           {"root_norms", roots}};
    if (c.lower_triangular) {
        json dn = json::array(), d1 = json::array();
        for (int v : c.diagonal_n_star) dn.push_back(v);
        for (const auto& v : c.diagonal_norm_n1) d1.push_back(v.str());
        o["fast_path"] = json{{"contractive", c.fast_path_contractive}, {"factor", c.fast_path_factor.str()}, {"diagonal_n_star", dn}, {"diagonal_norm_n1", d1}};
    }
    return o;
}

inline json convergence_json(const ConvergenceReport& c) {
    return json{{"verdict", c.verdict},
                {"levels", c.levels},
                {"radius", c.radius},
                {"sup_diff", c.sup_diff},
                {"ratios", c.ratios},
                {"decay_ratio", c.decay_ratio},
                {"final_sup_diff", c.final_sup_diff},
                {"final_residual", c.final_residual},
                {"final_scaled_residual", c.final_scaled_residual},
                {"residual_decay_ratio", c.residual_decay_ratio},
                {"residual", c.residual},
                {"scaled_residual", c.scaled_residual}};
}

inline json synthesis_json(const SynthesizedScheme& s) {
    json h = json::array(), bt = json::array();
    for (const auto& p : s.last_row.h) h.push_back(to_json(p));
    for (const auto& p : s.last_row.btilde) bt.push_back(to_json(p));
    json o{{"taylor", to_json(s.T)}, {"h_dd", to_json(s.h_dd)}, {"h", h}, {"btilde_last_row", bt}};
    if (s.has_system) {
        json vals = json::object();
        for (int j = s.T.d - 1; j >= 0; --j)
            for (int r = j + 1; r >= 1; --r) vals["h_" + std::to_string(j) + "," + std::to_string(r)] = s.system.value(j, r).str();
        o["derivatives_at_one"] = vals;
    }
    o["Btilde"] = to_json(s.Btilde);
    o["Btilde_symbol"] = to_json(mask_to_symbol(s.Btilde));
    o["A"] = to_json(s.A);
    o["A_symbol"] = to_json(mask_to_symbol(s.A));
    return o;
}

// ---- subcommands ------------------------------------------------------------

inline void cmd_annihilate(const CommandConfig& c, Report& rep) {
    json in = read_json_file(c.input);
    // Accept the report written by `chain` as well as a bare chain.
    if (in.is_object() && in.contains("result") && in["result"].is_object() && in["result"].contains("chain")) in = in["result"]["chain"];
    if (in.contains("vecs")) {
        const Chain ch = chain_from_json(in);
        const TaylorOperator t = annihilator(ch[ch.d]);
        rep.result()["taylor"] = to_json(t);
        rep.check("chain compatible", chain_compatible(ch));
        rep.check("every member annihilated by its block", chain_block_annihilated(ch));
        return;
    }
    const TaylorOperator t = annihilator(polyvec_from_json(in));
    rep.result()["taylor"] = to_json(t);
    bool zero = true;
    for (const auto& p : taylor_apply_poly(t, padded_column(polyvec_from_json(in), t.d))) zero = zero && p.is_zero();
    rep.check("operator annihilates the input", zero);
}

inline void cmd_chain(const CommandConfig& c, Report& rep) {
    const TaylorOperator t = load_taylor(c.taylor);
    const Chain ch = c.input.empty() ? chain_for(t) : chain_with_last(polyvec_from_json(read_json_file(c.input)));
    rep.result()["chain"] = to_json(ch);
    rep.check("chain compatible", chain_compatible(ch));
    rep.check("every member annihilated by its block", chain_block_annihilated(ch));
    rep.check("annihilator of the last member is the operator", annihilator(ch[ch.d]) == t);
}

/// Chain from --chain, or a spectral chain of --taylor found by constant search.
inline std::optional<Chain> resolve_chain(const CommandConfig& c, const Mask& a, Report& rep) {
    if (!c.chain.empty()) return chain_from_json(read_json_file(c.chain));
    if (c.taylor.empty()) fail(errc::invalid_argument, "give --chain or --taylor");
    Chain ch;
    const bool found = find_spectral_chain(a, load_taylor(c.taylor), ch);
    rep.check("a chain for the Taylor operator is spectral", found);
    if (!found) return std::nullopt;
    return ch;
}

inline void cmd_verify_spectral(const CommandConfig& c, Report& rep) {
    const Mask a = load_mask(c.mask);
    const auto ch = resolve_chain(c, a, rep);
    if (!ch) return;
    const SpectralVerdict v = verify_spectral_chain(a, *ch);
    rep.result()["chain"] = to_json(*ch);
    rep.result()["members"] = spectral_json(v);
    add_spectral_checks(rep, v);
}

inline void cmd_factor(const CommandConfig& c, Report& rep) {
    const Mask a = load_mask(c.mask);
    const auto ch = resolve_chain(c, a, rep);
    if (!ch) return;
    const SpectralVerdict v = verify_spectral_chain(a, *ch);
    add_spectral_checks(rep, v);
    if (!v.ok) return;
    const Rational scale = c.scale.empty() ? Rational::pow2(-a.d) : Rational::parse(c.scale);
    const Factorization f = taylor_factorize(a, *ch, scale);
    rep.result() = to_json(f);
    rep.result()["chain"] = to_json(*ch);
    rep.result()["A_symbol"] = to_json(mask_to_symbol(f.A));
    rep.result()["Btilde_symbol"] = to_json(mask_to_symbol(f.B));
    rep.check("factorization identity", factorization_identity_holds(f.A, f.T, f.B, f.scale));
    if (c.scale.empty()) {
        const Mask back = unfactor(f.T, f.B);
        rep.check("unfactor reproduces the mask", mask_to_symbol(back) == mask_to_symbol(a));
    }
}

inline void cmd_construct(const CommandConfig& c, Report& rep) {
    TaylorOperator t;
    LaurentPoly hdd;
    FillMap g;
    bool have_hdd = false;
    if (!c.config.empty()) {
        const json cfg = read_json_file(c.config);
        if (!cfg.contains("taylor")) fail(errc::parse_error, "config needs \"taylor\"");
        t = taylor_from_json(cfg.at("taylor"));
        if (cfg.contains("h_dd")) {
            hdd = laurent_from_json(cfg.at("h_dd"));
            have_hdd = true;
        }
        if (cfg.contains("g")) g = fill_from_json(cfg.at("g"));
    } else if (!c.taylor.empty()) {
        t = load_taylor(c.taylor);
    } else {
        fail(errc::invalid_argument, "give --taylor or --config");
    }
    if (!c.hdd.empty()) {
        hdd = parse_laurent(c.hdd);
        have_hdd = true;
    }
    if (!have_hdd) fail(errc::invalid_argument, "no h_dd given (--hdd or \"h_dd\" in the config)");
    for (const auto& [jk, p] : fill_preset(c.preset_g, t.d)) g[jk] = p;

    SynthesisOptions opt;
    opt.g = g;
    opt.closure = c.closure == "derivative" ? ClosureRule::derivative_consistent : ClosureRule::printed;
    if (c.closure != "printed" && c.closure != "derivative") fail(errc::invalid_argument, "--closure is printed or derivative");
    // The exdelta preset belongs with the reverse recurrence on T_Delta.
    std::string method = c.method.empty() ? (c.preset_g == "exdelta" && is_delta_operator(t) ? "delta" : "forward") : c.method;
    if (method == "delta")
        opt.method = LastRowMethod::delta_recurrence;
    else if (method == "forward")
        opt.method = LastRowMethod::forward_system;
    else
        fail(errc::invalid_argument, "--method is forward or delta");
    if (c.n_max > 0) opt.n_max = c.n_max;

    const SynthesizedScheme s = synthesize(t, hdd, opt);
    rep.result() = synthesis_json(s);
    rep.result()["method"] = method;
    rep.result()["g"] = fill_to_json(g);
    for (const auto& chk : s.checks) rep.check(chk.name, chk.ok);
}

inline void cmd_contractivity(const CommandConfig& c, Report& rep) {
    const Mask b = load_mask(c.mask);
    const ContractivityReport r = check_contractive(b, c.n_max > 0 ? c.n_max : default_nmax());
    rep.result() = contractivity_json(r);
    rep.check("contractive", r.contractive, r.contractive ? "n = " + std::to_string(r.n_star) : "no n within n_max has norm < 1");
}

inline std::string cmd_cascade(const CommandConfig& c, Report& rep) {
    const Mask a = load_mask(c.mask);
    if (c.init != "delta") fail(errc::invalid_argument, "only --init delta is supported");
    if (c.component < 0 || c.component > a.d) fail(errc::invalid_argument, "--component out of range");
    if (c.levels < 0 || c.levels > 14) fail(errc::invalid_argument, "--levels must be in 0..14");
    const auto grids = cascade_delta<double>(a, c.component, c.levels, c.radius);
    const Grid<double> g = crop(grids.back(), c.radius);
    if (c.format == "csv") return grid_to_csv(g);
    json xs = json::array(), vals = json::array();
    for (long al = g.lo; al <= g.hi(); ++al) {
        xs.push_back(std::ldexp(static_cast<double>(al), -g.level));
        vals.push_back(g.at(al));
    }
    rep.result() = json{{"level", g.level}, {"component", c.component}, {"x", xs}, {"f", vals}};
    return {};
}

inline void cmd_check_convergence(const CommandConfig& c, Report& rep) {
    const Mask a = load_mask(c.mask);
    const TaylorOperator t = c.taylor.empty() ? taylor_classical(a.d) : load_taylor(c.taylor);
    if (t.d != a.d) fail(errc::invalid_argument, "Taylor operator order does not match the mask");
    ConvergenceOptions opt;
    opt.levels = c.levels;
    opt.radius = c.radius;
    opt.sup_tol = c.sup_tol;
    opt.residual_tol = c.residual_tol;
    opt.ratio_threshold = c.ratio;
    const ConvergenceReport r = check_convergence(a, t, opt);
    rep.result() = convergence_json(r);
    std::ostringstream d1, d2, d3, d4;
    d1 << "ratio " << r.decay_ratio << " (threshold " << opt.ratio_threshold << ")";
    d2 << "final " << r.final_sup_diff << " (tolerance " << opt.sup_tol << ")";
    d3 << "ratio " << r.residual_decay_ratio << " (threshold " << opt.ratio_threshold << ")";
    d4 << "final " << r.final_residual << " (tolerance " << opt.residual_tol << ")";
    rep.check("sup differences decay", r.decaying, d1.str());
    rep.check("sup difference within tolerance", r.sup_ok, d2.str());
    rep.check("Taylor residuals decay", r.residual_decaying, d3.str());
    rep.check("Taylor residual within tolerance", r.residual_ok, d4.str());
}

inline void cmd_spline(const CommandConfig& c, Report& rep) {
    const SplineScheme s = spline_mask(c.r, c.d);
    rep.result()["preset"] = "spline:r=" + std::to_string(c.r) + ",d=" + std::to_string(c.d);
    rep.result()["symbol"] = to_json(s.a);
    rep.result()["A"] = to_json(s.A);
    rep.result()["chain"] = to_json(s.chain);
    if (!c.verify) return;
    const SplineReport v = spline_verify(c.r, c.d);
    add_spectral_checks(rep, v.spectral_detail);
    if (v.spectral) {
        rep.result()["Btilde"] = to_json(v.factorization.B);
        rep.result()["Btilde_symbol"] = to_json(mask_to_symbol(v.factorization.B));
    }
    if (v.golden_checked) rep.check("Btilde matches the reference r = 4, d = 3 matrix", v.golden_match);
    rep.check(v.classical_expected ? "classical spectral condition holds (d <= 1)" : "classical spectral condition fails (d >= 2)",
              v.classical_spectral == v.classical_expected);
}

inline void cmd_identity_tests(const CommandConfig& c, Report& rep) {
    rep.result()["seed"] = c.seed;
    for (const auto& s : run_identity_suites(c.seed))
        rep.check(s.name, s.ok(), std::to_string(s.cases) + " cases" + (s.ok() ? "" : ", first failure: " + s.first_failure));
}

// ---- driver -------------------------------------------------------------------

inline bool malformed(errc code) {
    switch (code) {
        case errc::parse_error:
        case errc::invalid_argument:
        case errc::not_in_vd:
        case errc::bad_order:
        case errc::bad_seed:
        case errc::not_triangular:
        case errc::window_too_small: return true;
        default: return false;
    }
}

inline int emit(const CommandConfig& c, const std::string& text, std::ostream& out, std::ostream& err) {
    if (c.out.empty() || c.out == "-") {
        out << text;
        return exit_ok;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f || !(f << text)) {
        err << "error: cannot write '" << c.out << "'\n";
        return exit_malformed;
    }
    return exit_ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact construction, factorization and analysis of Hermite subdivision schemes", "hermite-forge"};
    app.require_subcommand(1);
    CommandConfig c;

    auto common = [&c](CLI::App* s) {
        s->add_option("--out,-o", c.out, "output path (default stdout)");
        s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto mask_opt = [&c](CLI::App* s) { s->add_option("--mask", c.mask, "mask JSON file or preset spline:r=R,d=D")->required(); };

    auto* annihilate = app.add_subcommand("annihilate", "Taylor operator annihilating a polynomial vector or chain");
    annihilate->add_option("input", c.input, "PolyVec or Chain JSON")->required();
    common(annihilate);

    auto* chain = app.add_subcommand("chain", "chain of a Taylor operator");
    chain->add_option("--taylor", c.taylor, "Taylor operator JSON or delta:D, classical:D, spline:D")->required();
    chain->add_option("--last", c.input, "build the chain through this PolyVec instead");
    common(chain);

    auto* verify = app.add_subcommand("verify-spectral", "check the eigenvector relations of a chain");
    mask_opt(verify);
    verify->add_option("--chain", c.chain, "chain JSON");
    verify->add_option("--taylor", c.taylor, "search the chains of this operator instead");
    common(verify);

    auto* factor = app.add_subcommand("factor", "factor a mask through a spectral chain");
    mask_opt(factor);
    factor->add_option("--chain", c.chain, "chain JSON");
    factor->add_option("--taylor", c.taylor, "search the chains of this operator instead");
    factor->add_option("--scale", c.scale, "scale of the factorization identity (default 2^-d)");
    common(factor);

    auto* construct = app.add_subcommand("construct", "synthesize a scheme from a Taylor operator and a seed h_dd");
    construct->add_option("--taylor", c.taylor, "Taylor operator JSON or delta:D, classical:D, spline:D");
    construct->add_option("--config", c.config, "JSON {taylor, h_dd, g}");
    construct->add_option("--hdd", c.hdd, "seed symbol, e.g. \"(z+1)/2\"");
    construct->add_option("--preset-g", c.preset_g, "fill preset: none or exdelta");
    construct->add_option("--method", c.method, "forward or delta");
    construct->add_option("--closure", c.closure, "printed or derivative");
    construct->add_option("--nmax", c.n_max, "seed contractivity search depth");
    common(construct);

    auto* contract = app.add_subcommand("contractivity", "contractivity of a (difference) scheme");
    mask_opt(contract);
    contract->add_option("--nmax", c.n_max, "maximal iteration depth (default HERMITE_FORGE_NMAX or 8)");
    common(contract);

    auto* cascade_cmd = app.add_subcommand("cascade", "run the cascade algorithm from delta data");
    mask_opt(cascade_cmd);
    cascade_cmd->add_option("--levels", c.levels, "number of refinement steps");
    cascade_cmd->add_option("--init", c.init, "initial data (delta)");
    cascade_cmd->add_option("--component", c.component, "component carrying the delta");
    cascade_cmd->add_option("--radius", c.radius, "output window [-radius, radius]");
    common(cascade_cmd);

    auto* conv = app.add_subcommand("check-convergence", "numerical convergence diagnostics");
    mask_opt(conv);
    conv->add_option("--taylor", c.taylor, "operator for the scaled residual (default classical)");
    conv->add_option("--levels", c.levels, "levels");
    conv->add_option("--radius", c.radius, "window [-radius, radius]");
    conv->add_option("--sup-tol", c.sup_tol, "final sup difference tolerance");
    conv->add_option("--residual-tol", c.residual_tol, "final Taylor residual tolerance");
    conv->add_option("--ratio", c.ratio, "required decay ratio");
    common(conv);

    auto* spline = app.add_subcommand("spline", "B-spline Hermite scheme presets");
    spline->add_option("--r", c.r, "spline degree")->required();
    spline->add_option("--d", c.d, "Hermite order")->required();
    spline->add_flag("--verify", c.verify, "verify chain, factorization and classical condition");
    common(spline);

    auto* ident = app.add_subcommand("identity-tests", "run the polynomial identity suites");
    ident->add_option("--seed", c.seed, "generator seed");
    common(ident);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_malformed;
    }
    c.command = app.get_subcommands().front()->get_name();

    Report rep(c.command);
    std::string text;
    try {
        if (c.format == "csv" && c.command != "cascade") fail(errc::invalid_argument, "--format csv is only available for cascade");
        if (c.command == "annihilate") cmd_annihilate(c, rep);
        else if (c.command == "chain") cmd_chain(c, rep);
        else if (c.command == "verify-spectral") cmd_verify_spectral(c, rep);
        else if (c.command == "factor") cmd_factor(c, rep);
        else if (c.command == "construct") cmd_construct(c, rep);
        else if (c.command == "contractivity") cmd_contractivity(c, rep);
        else if (c.command == "cascade") text = cmd_cascade(c, rep);
        else if (c.command == "check-convergence") cmd_check_convergence(c, rep);
        else if (c.command == "spline") cmd_spline(c, rep);
        else if (c.command == "identity-tests") cmd_identity_tests(c, rep);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        if (malformed(e.code())) return exit_malformed;
        rep.raw()["ok"] = false;
        rep.raw()["error"] = json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
        text.clear();
    }
    if (text.empty()) text = rep.raw().dump(2) + "\n";
    const int w = emit(c, text, out, err);
    if (w != exit_ok) return w;
    return rep.ok() ? exit_ok : exit_failed;
}

} // namespace hforge::cli

#endif // HFORGE_CLI_HPP
