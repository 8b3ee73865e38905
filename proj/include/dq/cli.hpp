#pragma once

#include "dq/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dq::cli {

enum ExitCode { ok = 0, usage = 1, verification_failed = 2 };

namespace detail {

using nlohmann::json;

struct Window {
    int dof = 1;
    int deg_t = 8;
    int deg_xy = 8;
};

inline void add_window(CLI::App* sub, Window& w)
{
    sub->add_option("--dof", w.dof, "degrees of freedom")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--trunc-t", w.deg_t, "truncation degree in the distinguished variable")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--trunc-xy", w.deg_xy, "truncation degree in the phase variables")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

inline json series_record(const FormalSeries& s)
{
    return {{"result", to_string(s)},
            {"variables", s.vars().names()},
            {"window", {s.trunc().deg_t, s.trunc().deg_xy}},
            {"complete", s.is_complete()}};
}

inline json variety_record(const Variety& v)
{
    json comps = json::array();
    for (const auto& u : v.components()) {
        json leaves = json::array();
        for (const auto& l : u)
            leaves.push_back({{"label", l.label}, {"poly", to_string(l.poly)}});
        comps.push_back(leaves);
    }
    return {{"variables", v.vars().names()}, {"intersect", comps}};
}

inline json suite_record(const SuiteReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"suite", r.suite}, {"pass", r.all_pass()}, {"checks", checks}};
}

/// Natural-sorted union of the identifiers in `texts`, minus `skip`.
inline std::vector<std::string> collect_variables(const std::vector<std::string>& texts, const std::set<std::string>& skip = {})
{
    std::set<std::string, decltype([](const std::string& a, const std::string& b) { return natural_less(a, b); })> names;
    for (const auto& t : texts)
        for (auto& n : infer_variables(t))
            if (!skip.contains(n))
                names.insert(n);
    return {names.begin(), names.end()};
}

/// "a=1/2,b=3" bound in the order of `vars`; every variable must be given.
inline std::vector<Rational> parse_point(const std::string& text, const VariableSet& vars)
{
    std::vector<std::optional<Rational>> slots(vars.size());
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos)
            end = text.size();
        std::string item = text.substr(start, end - start);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("point entries look like name=value, got '" + item + "'");
        auto idx = vars.find(item.substr(0, eq));
        if (!idx)
            throw ParseError("unknown variable '" + item.substr(0, eq) + "' in point");
        slots[*idx] = parse_rational(item.substr(eq + 1));
        start = end + 1;
    }
    std::vector<Rational> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i])
            throw ParseError("point is missing a value for '" + vars.name(i) + "'");
        out.push_back(*slots[i]);
    }
    return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& text)
{
    std::vector<Rational> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos)
            end = text.size();
        out.push_back(parse_rational(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

} // namespace detail

/// Runs one invocation; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    using namespace detail;
    CLI::App app{"Exact star products, Borel-plane operations and singular loci"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::function<int()> action;
    auto emit_series = [&](const std::string& command, const FormalSeries& s) {
        if (as_json) {
            json j = series_record(s);
            j["command"] = command;
            out << j.dump() << "\n";
        } else {
            out << to_string(s) << "\n";
        }
        return ok;
    };
    auto emit_poly = [&](const std::string& command, const MultiPoly& p) {
        if (as_json)
            out << json{{"command", command}, {"result", to_string(p)}, {"variables", p.vars().names()}}.dump() << "\n";
        else
            out << to_string(p) << "\n";
        return ok;
    };

    // Phase-space series commands.
    Window win;
    std::string kind = "standard";
    std::vector<std::string> exprs;
    bool inverse = false;

    auto* star_cmd = app.add_subcommand("star", "star product of two series in t");
    add_window(star_cmd, win);
    star_cmd->add_option("--kind", kind, "standard or moyal")->capture_default_str();
    star_cmd->add_option("exprs", exprs, "f g")->required()->expected(2);
    star_cmd->callback([&] {
        action = [&] {
            VariableSet V = VariableSet::phase_space(win.dof);
            Truncation w{win.deg_t, win.deg_xy};
            return emit_series("star", star(parse_series(exprs[0], V, w), parse_series(exprs[1], V, w),
                                             parse_star_kind(kind)));
        };
    });

    auto* commutator_cmd = app.add_subcommand("commutator", "Moyal commutator (f *M g - g *M f)/t");
    add_window(commutator_cmd, win);
    commutator_cmd->add_option("exprs", exprs, "f g")->required()->expected(2);
    commutator_cmd->callback([&] {
        action = [&] {
            VariableSet V = VariableSet::phase_space(win.dof);
            Truncation w{win.deg_t, win.deg_xy};
            return emit_series("commutator", moyal_commutator(parse_series(exprs[0], V, w), parse_series(exprs[1], V, w)));
        };
    });

    auto* borel_cmd = app.add_subcommand("borel", "formal Borel transform t^n -> xi^n/n!");
    add_window(borel_cmd, win);
    borel_cmd->add_option("expr", exprs, "f")->required()->expected(1);
    borel_cmd->callback([&] {
        action = [&] {
            return emit_series("borel", borel(parse_series(exprs[0], VariableSet::phase_space(win.dof),
                                                           {win.deg_t, win.deg_xy})));
        };
    });

    auto* unborel_cmd = app.add_subcommand("unborel", "inverse Borel transform xi^n -> n! t^n");
    add_window(unborel_cmd, win);
    unborel_cmd->add_option("expr", exprs, "fhat")->required()->expected(1);
    unborel_cmd->callback([&] {
        action = [&] {
            return emit_series("unborel", inverse_borel(parse_series(exprs[0], VariableSet::phase_space(win.dof, "xi"),
                                                                     {win.deg_t, win.deg_xy})));
        };
    });

    auto* bstar_cmd = app.add_subcommand("borel-star", "Borel-plane star product of two series in xi");
    add_window(bstar_cmd, win);
    bstar_cmd->add_option("--kind", kind, "standard or moyal")->capture_default_str();
    bstar_cmd->add_option("exprs", exprs, "fhat ghat")->required()->expected(2);
    bstar_cmd->callback([&] {
        action = [&] {
            VariableSet V = VariableSet::phase_space(win.dof, "xi");
            Truncation w{win.deg_t, win.deg_xy};
            return emit_series("borel-star", borel_star(parse_series(exprs[0], V, w), parse_series(exprs[1], V, w),
                                                        parse_star_kind(kind)));
        };
    });

    auto* transition_cmd = app.add_subcommand("transition", "transition operator T = exp(-t/2 sum d_q d_p)");
    add_window(transition_cmd, win);
    transition_cmd->add_flag("--inverse", inverse, "apply T^-1");
    transition_cmd->add_option("expr", exprs, "f")->required()->expected(1);
    transition_cmd->callback([&] {
        action = [&] {
            return emit_series("transition", transition_T(parse_series(exprs[0], VariableSet::phase_space(win.dof),
                                                                       {win.deg_t, win.deg_xy}),
                                                          inverse));
        };
    });

    // Univariate and polynomial commands.
    std::optional<int> order;
    auto* hadamard_cmd = app.add_subcommand("hadamard", "coefficientwise product of two univariate series");
    hadamard_cmd->add_option("--order", order, "truncation order (default: exact)");
    hadamard_cmd->add_option("exprs", exprs, "phi psi")->required()->expected(2);
    hadamard_cmd->callback([&] {
        action = [&] {
            auto names = collect_variables(exprs);
            if (names.size() > 1)
                throw std::invalid_argument("hadamard inputs must share a single variable");
            VariableSet V({names.empty() ? std::string("xi") : names.front()});
            MultiPoly a = parse_poly(exprs[0], V), b = parse_poly(exprs[1], V);
            Truncation w{order.value_or(std::max({a.total_degree(), b.total_degree(), 0})), 0};
            return emit_series("hadamard", hadamard(FormalSeries::from_poly(a, w), FormalSeries::from_poly(b, w)));
        };
    });

    std::string vi, vj, xi_name = "xi";
    auto* odot_cmd = app.add_subcommand("odot", "sum_a (d_i^a d_j^a F)/(a!)^2 xi^a of a polynomial F");
    odot_cmd->add_option("--i", vi, "first variable")->required();
    odot_cmd->add_option("--j", vj, "second variable")->required();
    odot_cmd->add_option("--xi", xi_name, "name of the new variable")->capture_default_str();
    odot_cmd->add_option("expr", exprs, "F")->required()->expected(1);
    odot_cmd->callback([&] {
        action = [&] {
            // A spare distinguished slot keeps every input variable eligible.
            std::vector<std::string> names{"__odot"};
            for (auto& n : collect_variables({exprs[0], vi, vj}))
                names.push_back(n);
            VariableSet V(names);
            MultiPoly F = parse_poly(exprs[0], V);
            FormalSeries s = odot_ij(FormalSeries::from_poly(F, {0, std::max(F.total_degree(), 0)}), vi, vj, xi_name);
            std::vector<std::string> kept(s.vars().names());
            kept.erase(kept.begin() + 1);
            return emit_poly("odot", s.poly().embed(VariableSet(kept)));
        };
    });

    std::string var;
    auto* simple_cmd = app.add_subcommand("simple-poly", "simple part content * pp / gcd(pp, pp') in one variable");
    simple_cmd->add_option("--var", var, "main variable")->required();
    simple_cmd->add_option("expr", exprs, "P")->required()->expected(1);
    simple_cmd->callback([&] {
        action = [&] {
            VariableSet V(collect_variables({exprs[0], var}));
            return emit_poly("simple-poly", simple_decompose(UniOverPoly(parse_poly(exprs[0], V), var)).to_poly());
        };
    });

    auto* resultant_cmd = app.add_subcommand("resultant", "Sylvester resultant in one variable");
    resultant_cmd->add_option("--var", var, "eliminated variable")->required();
    resultant_cmd->add_option("exprs", exprs, "P Q")->required()->expected(2);
    resultant_cmd->callback([&] {
        action = [&] {
            VariableSet V(collect_variables({exprs[0], exprs[1], var}));
            return emit_poly("resultant", sylvester_resultant(parse_poly(exprs[0], V), parse_poly(exprs[1], V), var));
        };
    });

    // Loci.
    std::string point, upper, drop, sf, sg, pf, qg;
    auto emit_variety = [&](const std::string& command, const Variety& v, json extra = json::object()) {
        std::optional<std::vector<Rational>> pt;
        if (!point.empty())
            pt = parse_point(point, v.vars());
        if (as_json) {
            json j = variety_record(v);
            j["command"] = command;
            j.update(extra);
            if (pt) {
                j["member"] = v.contains(*pt);
                j["vanishing"] = v.vanishing_labels(*pt);
            }
            out << j.dump() << "\n";
            return ok;
        }
        for (auto& [k, val] : extra.items())
            out << k << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
        out << to_string(v) << "\n";
        if (pt) {
            out << "member: " << (v.contains(*pt) ? "yes" : "no") << "\n";
            auto labels = v.vanishing_labels(*pt);
            out << "vanishing:";
            for (const auto& l : labels)
                out << " " << l;
            out << "\n";
        }
        return ok;
    };
    auto* locus_cmd = app.add_subcommand("locus", "candidate singular loci");
    locus_cmd->require_subcommand(1);

    auto* conv_cmd = locus_cmd->add_subcommand("conv", "locus of z -> int_0^upper F dz_var with F singular on P = 0");
    conv_cmd->add_option("--var", var, "integration variable")->required();
    conv_cmd->add_option("--upper", upper, "upper limit, vanishing at the origin")->required();
    conv_cmd->add_option("--drop", drop, "remove a variable no leaf depends on");
    conv_cmd->add_option("--point", point, "membership query, e.g. z=1/2,z2=3");
    conv_cmd->add_option("expr", exprs, "P")->required()->expected(1);
    conv_cmd->callback([&] {
        action = [&] {
            VariableSet in(collect_variables({exprs[0], var}));
            VariableSet outv(collect_variables({exprs[0], upper}, {var}));
            ConvLocus L = conv_locus(parse_poly(exprs[0], in), var, parse_poly(upper, outv));
            Variety v = drop.empty() ? L.variety : conv_locus_drop_variable(L.variety, drop);
            std::string which = L.which == ConvCase::endpoint_generic ? "1 (endpoint generic)" : "2 (endpoint on a root)";
            return emit_variety("locus conv", v, {{"case", which}});
        };
    });

    auto* h1_cmd = locus_cmd->add_subcommand("hadamard1d", "{xi = 0} and {xi = s t} for singular points s, t");
    h1_cmd->add_option("--sf", sf, "comma-separated singular points of f")->required();
    h1_cmd->add_option("--sg", sg, "comma-separated singular points of g")->required();
    h1_cmd->add_option("--xi", xi_name, "variable name")->capture_default_str();
    h1_cmd->add_option("--point", point, "membership query, e.g. xi=1");
    h1_cmd->callback([&] {
        action = [&] {
            return emit_variety("locus hadamard1d",
                                hadamard_locus_1d(parse_rational_list(sf), parse_rational_list(sg), xi_name));
        };
    });

    auto* h5_cmd = locus_cmd->add_subcommand("hadamard", "locus in (xi1, xi2, xi3, q, p) from Pf(xi1, q, p), Qg(xi2, q, p)");
    h5_cmd->add_option("--pf", pf, "singular polynomial of f, simple in p")->required();
    h5_cmd->add_option("--qg", qg, "singular polynomial of g, simple in q")->required();
    h5_cmd->add_option("--point", point, "membership query over xi1, xi2, xi3, q, p");
    h5_cmd->callback([&] {
        action = [&] {
            MultiPoly P = parse_poly(pf, VariableSet({"xi1", "q", "p"}));
            MultiPoly Q = parse_poly(qg, VariableSet({"xi2", "q", "p"}));
            return emit_variety("locus hadamard", hadamard_locus_5var(P, Q));
        };
    });

    auto* lo_cmd = locus_cmd->add_subcommand("odot", "locus of the odot operation on a polynomial");
    lo_cmd->add_option("--i", vi, "first variable")->required();
    lo_cmd->add_option("--j", vj, "second variable")->required();
    lo_cmd->add_option("--xi", xi_name, "name of the new variable")->capture_default_str();
    lo_cmd->add_option("--point", point, "membership query");
    lo_cmd->add_option("expr", exprs, "P")->required()->expected(1);
    lo_cmd->callback([&] {
        action = [&] {
            VariableSet V(collect_variables({exprs[0], vi, vj}));
            return emit_variety("locus odot", odot_locus(parse_poly(exprs[0], V), vi, vj, xi_name));
        };
    });

    // Packaged verification suites.
    std::uint64_t seed = default_seed;
    int cases = 50;
    RadiusSuiteOptions radius;
    std::string method = "ratio";
    auto emit_suite = [&](const SuiteReport& r, const std::vector<RadiusReport>* reports) {
        if (as_json) {
            json j = suite_record(r);
            j["seed"] = seed;
            if (reports) {
                json recs = json::array();
                for (const auto& rep : *reports)
                    recs.push_back(to_string(rep));
                j["reports"] = recs;
            }
            out << j.dump() << "\n";
        } else {
            if (reports)
                for (const auto& rep : *reports)
                    out << to_string(rep) << "\n";
            out << to_string(r);
        }
        return r.all_pass() ? ok : verification_failed;
    };
    auto* verify_cmd = app.add_subcommand("verify", "run a packaged verification suite");
    verify_cmd->require_subcommand(1);

    auto* vi_cmd = verify_cmd->add_subcommand("integral-reps", "integral representations against their definitions");
    vi_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    vi_cmd->add_option("--cases", cases, "random inputs per operation")->check(CLI::PositiveNumber)->capture_default_str();
    vi_cmd->callback([&] { action = [&] { return emit_suite(run_integral_reps_suite(seed, cases), nullptr); }; });

    auto* vr_cmd = verify_cmd->add_subcommand("radius", "radius of convergence against locus distance");
    vr_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    vr_cmd->add_option("--points", radius.points, "random (q, p) points")->check(CLI::PositiveNumber)->capture_default_str();
    vr_cmd->add_option("--euler-order", radius.euler_order, "xi order for the Euler family")->capture_default_str();
    vr_cmd->add_option("--log-order", radius.log_order, "xi order for the log family")->capture_default_str();
    vr_cmd->add_option("--euler-tol", radius.euler_tol, "relative tolerance, Euler family")->capture_default_str();
    vr_cmd->add_option("--log-tol", radius.log_tol, "relative tolerance, log family")->capture_default_str();
    vr_cmd->add_option("--method", method, "ratio or root")->capture_default_str();
    vr_cmd->callback([&] {
        action = [&] {
            radius.seed = seed;
            radius.method = parse_radius_method(method);
            std::vector<RadiusReport> reports;
            SuiteReport r = run_radius_suite(radius, &reports);
            return emit_suite(r, &reports);
        };
    });

    auto* ve_cmd = verify_cmd->add_subcommand("examples", "worked examples");
    ve_cmd->callback([&] { action = [&] { return emit_suite(run_examples_suite(), nullptr); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }
    try {
        return action();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

} // namespace dq::cli
