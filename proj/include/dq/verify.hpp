#pragma once

#include "dq/integral_reps.hpp"
#include "dq/locus.hpp"
#include "dq/numeric.hpp"
#include "dq/parse.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace dq {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }

    void add(std::string name, bool pass, std::string detail = {})
    {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }

    /// Runs `body`, recording an exception as a failure.
    void run(const std::string& name, const std::function<bool(std::string&)>& body)
    {
        std::string detail;
        try {
            bool ok = body(detail);
            add(name, ok, detail);
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
};

constexpr std::uint64_t default_seed = 20240607;

/// Random polynomial series with `terms` monomials inside the window and
/// small rational coefficients.
inline FormalSeries random_series(const VariableSet& vars, Truncation w, int terms, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), tdeg(0, w.deg_t);
    std::uniform_int_distribution<std::size_t> var(1, std::max<std::size_t>(vars.size(), 2) - 1);
    TermMap out;
    for (int i = 0; i < terms; ++i) {
        Exponents e(vars.size(), 0);
        e[0] = tdeg(rng);
        int xy = std::uniform_int_distribution<int>(0, w.deg_xy)(rng);
        if (vars.size() > 1)
            for (int k = 0; k < xy; ++k)
                ++e[var(rng)];
        add_to(out, e, make_rational(num(rng), den(rng)));
    }
    return FormalSeries::from_poly(MultiPoly(vars, std::move(out)), w);
}

inline FormalSeries random_univariate(const VariableSet& vars, int degree, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    TermMap out;
    for (int k = 0; k <= degree; ++k)
        add_to(out, Exponents{k}, make_rational(num(rng), den(rng)));
    return FormalSeries::from_poly(MultiPoly(vars, std::move(out)), {degree, 0});
}

namespace detail {

inline bool expect_text(std::string& detail, const std::string& got, const std::string& want)
{
    detail = got;
    if (got != want)
        detail = "got " + got + ", want " + want;
    return got == want;
}

} // namespace detail

/// Worked examples: star products, transition operator, Borel plane,
/// Hadamard products, polynomial calculus and loci.
inline SuiteReport run_examples_suite()
{
    SuiteReport r{"examples", {}};
    VariableSet V = VariableSet::phase_space(1);
    VariableSet B = VariableSet::phase_space(1, "xi");
    Truncation w{8, 8};
    auto S = [&](const char* s) { return parse_series(s, V, w); };
    auto H = [&](const char* s) { return parse_series(s, B, w); };

    r.run("standard star (tp)*(tq)", [&](std::string& d) {
        return detail::expect_text(d, to_string(standard_star(S("t*p"), S("t*q"))), "t^2*p*q + t^3");
    });
    r.run("standard star (tq)*(tp)", [&](std::string& d) {
        return detail::expect_text(d, to_string(standard_star(S("t*q"), S("t*p"))), "t^2*p*q");
    });
    r.run("moyal star (tp)*(tq)", [&](std::string& d) {
        return detail::expect_text(d, to_string(moyal_star(S("t*p"), S("t*q"))), "t^2*p*q + 1/2*t^3");
    });
    r.run("transition T(t^2 p q)", [&](std::string& d) {
        return detail::expect_text(d, to_string(transition_T(S("t^2*p*q"))), "t^2*p*q - 1/2*t^3");
    });
    r.run("commutator [p,q]", [&](std::string& d) {
        return detail::expect_text(d, to_string(moyal_commutator(S("p"), S("q"))), "1");
    });
    r.run("canonical commutation relations, 3 dof", [&](std::string& d) {
        VariableSet V3 = VariableSet::phase_space(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto qi = FormalSeries::from_poly(MultiPoly::variable(V3, V3.name(V3.q(i))), w);
                auto pi = FormalSeries::from_poly(MultiPoly::variable(V3, V3.name(V3.p(i))), w);
                auto qj = FormalSeries::from_poly(MultiPoly::variable(V3, V3.name(V3.q(j))), w);
                auto pj = FormalSeries::from_poly(MultiPoly::variable(V3, V3.name(V3.p(j))), w);
                std::string want = i == j ? "1" : "0";
                if (to_string(moyal_commutator(pi, qj)) != want || to_string(moyal_commutator(pi, pj)) != "0" ||
                    to_string(moyal_commutator(qi, qj)) != "0") {
                    d = "failed at i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1);
                    return false;
                }
            }
        return true;
    });
    r.run("borel of t^2 p q + t^3", [&](std::string& d) {
        return detail::expect_text(d, to_string(borel(S("t^2*p*q + t^3"))), "1/2*xi^2*p*q + 1/6*xi^3");
    });
    r.run("borel star (xi p)*(xi q)", [&](std::string& d) {
        return detail::expect_text(d, to_string(borel_star(H("xi*p"), H("xi*q"), StarKind::standard)),
                                   "1/2*xi^2*p*q + 1/6*xi^3");
    });
    r.run("integral representation of the borel star, xi^3/3! regression", [&](std::string& d) {
        auto got = eval_borel_star_rep(H("xi*p"), H("xi*q"));
        Rational c = got.coefficient({3, 0, 0});
        d = "xi^3 coefficient " + c.get_str();
        return c == Rational(1, 6);
    });
    r.run("hadamard log(1-xi) with itself is Li2", [&](std::string& d) {
        VariableSet X({"xi"});
        TermMap t;
        for (int k = 1; k <= 12; ++k)
            add_to(t, Exponents{k}, make_rational(-1, k));
        auto f = FormalSeries::from_poly(MultiPoly(X, t), {12, 0}, false);
        auto h = hadamard(f, f);
        for (int k = 1; k <= 12; ++k)
            if (h.coefficient({k}) != make_rational(1, k * k)) {
                d = "coefficient " + std::to_string(k);
                return false;
            }
        return true;
    });
    r.run("hadamard (xi + xi^2) with xi", [&](std::string& d) {
        VariableSet X({"xi"});
        return detail::expect_text(d, to_string(hadamard(parse_series("xi + xi^2", X, {8, 0}), parse_series("xi", X, {8, 0}))),
                                   "xi");
    });

    VariableSet Z({"z1", "z2"});
    VariableSet O({"z", "z2"});
    r.run("resultant of z1^2 - z2 and 2 z1", [&](std::string& d) {
        return detail::expect_text(d, to_string(sylvester_resultant(parse_poly("z1^2 - z2", Z), parse_poly("2*z1", Z), "z1")),
                                   "-4*z2");
    });
    r.run("simple decomposition of (z1 - z2)^2 (z1 + 1)", [&](std::string& d) {
        auto p = parse_poly("z1^3 - 2*z1^2*z2 + z1^2 + z1*z2^2 - 2*z1*z2 + z2^2", Z);
        return detail::expect_text(d, to_string(simple_decompose(UniOverPoly(p, "z1")).to_poly()),
                                   to_string(parse_poly("z1^2 - z1*z2 + z1 - z2", Z)));
    });
    auto union_matches = [&](const Variety& v, const MultiPoly& want, std::string& d) {
        // Same zero set on a grid of rational points.
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b) {
                std::vector<Rational> pt{make_rational(a, 2), make_rational(b, 3)};
                bool in = v.contains(pt);
                bool expect = want.evaluate_at(pt) == 0;
                if (in != expect) {
                    d = "disagree at (" + pt[0].get_str() + "," + pt[1].get_str() + ")";
                    return false;
                }
            }
        return true;
    };
    r.run("convolution locus, log(z2 z + 1)/z2", [&](std::string& d) {
        auto L = conv_locus(parse_poly("z2*z1 + 1", Z), "z1", parse_poly("z", O));
        return union_matches(L.variety, parse_poly("z*z2^2 + z2", O), d);
    });
    r.run("convolution locus, (z1 + 1)(z1 + z2 + 1)", [&](std::string& d) {
        auto L = conv_locus(parse_poly("z1^2 + z1*z2 + 2*z1 + z2 + 1", Z), "z1", parse_poly("z", O));
        MultiPoly want = parse_poly("z2", O) * parse_poly("z + 1", O) * parse_poly("z + z2 + 1", O) * parse_poly("z2 + 1", O);
        return union_matches(L.variety, want, d);
    });
    r.run("convolution locus, endpoint on a root (dilogarithm)", [&](std::string& d) {
        auto L = conv_locus(parse_poly("-z1^2 + 2*z1*z2 - z1 - z2^2 + z2", Z), "z1", parse_poly("z2", O));
        if (L.which != ConvCase::endpoint_on_root) {
            d = "endpoint case not detected";
            return false;
        }
        Variety v = conv_locus_drop_variable(L.variety, "z");
        for (int n = -6; n <= 6; ++n) {
            Rational z2 = make_rational(n, 3);
            if (v.contains({z2}) != (z2 == 0 || z2 == 1)) {
                d = "disagree at z2=" + z2.get_str();
                return false;
            }
        }
        return true;
    });
    r.run("hadamard locus of singular points {1} and {1}", [&](std::string& d) {
        auto v = hadamard_locus_1d({Rational(1)}, {Rational(1)});
        d = to_string(v.union_polynomial(0));
        return v.contains({Rational(0)}) && v.contains({Rational(1)}) && !v.contains({Rational(1, 2)}) &&
               !v.contains({Rational(2)});
    });
    r.run("five-variable hadamard locus of log(3-xi-q-p) and 1/(AB)", [&](std::string& d) {
        VariableSet F({"xi1", "q", "p"}), G({"xi2", "q", "p"});
        auto v = hadamard_locus_5var(parse_poly("p + q + xi1 - 3", F),
                                     parse_poly("3 - xi2 - q - p", G) * parse_poly("4 - xi2 - 2*q - p", G));
        // (xi1, xi2, xi3, q, p) with A = 0, B = 0, omega1 = Omega1, omega1 = Omega2, Omega1 = Omega2.
        using C = std::complex<double>;
        auto at = [](double x1, double x2, double x3, double q, double p) {
            return std::vector<C>{x1, x2, x3, q, p};
        };
        double q = 0.2, p = 0.1, x2 = 0.3, x3 = 0.125;
        double A = 3 - x2 - q - p, Bv = 4 - x2 - 2 * q - p;
        std::vector<std::pair<std::string, std::vector<C>>> pts{
            {"A=0", at(0.4, 3 - q - p, x3, q, p)},
            {"B=0", at(0.4, 4 - 2 * q - p, x3, q, p)},
            {"omega1=Omega1", at(3 - q - p - x3 / A, x2, x3, q, p)},
            {"omega1=Omega2", at(3 - q - p - 2 * x3 / Bv, x2, x3, q, p)},
            {"Omega1=Omega2", at(0.4, 2 - p, x3, q, p)},
        };
        for (const auto& [name, pt] : pts)
            if (!v.contains_numeric(pt, 1e-9)) {
                d = name + " not contained";
                return false;
            }
        return true;
    });
    return r;
}

/// Exact agreement of every integral representation with its definition on
/// seeded random inputs.
inline SuiteReport run_integral_reps_suite(std::uint64_t seed = default_seed, int cases = 50, Truncation w = {6, 5})
{
    SuiteReport r{"integral-reps", {}};
    std::mt19937_64 rng(seed);
    VariableSet B1 = VariableSet::phase_space(1, "xi");
    VariableSet B2 = VariableSet::phase_space(2, "xi");
    VariableSet X({"xi"});
    std::uniform_int_distribution<int> nterms(1, 6);

    auto batch = [&](const std::string& name, const std::function<bool()>& one) {
        r.run(name, [&](std::string& d) {
            for (int i = 0; i < cases; ++i)
                if (!one()) {
                    d = "mismatch at case " + std::to_string(i);
                    return false;
                }
            d = std::to_string(cases) + " cases";
            return true;
        });
    };
    batch("borel star representation", [&] {
        auto f = random_series(B1, w, nterms(rng), rng), g = random_series(B1, w, nterms(rng), rng);
        return eval_borel_star_rep(f, g) == borel_star(f, g, StarKind::standard);
    });
    batch("moyal representation", [&] {
        auto f = random_series(B1, w, nterms(rng), rng), g = random_series(B1, w, nterms(rng), rng);
        return eval_moyal_rep(f, g) == borel_star(f, g, StarKind::moyal);
    });
    batch("transition representation", [&] {
        auto f = random_series(B1, w, nterms(rng), rng);
        bool inv = rng() % 2 == 0;
        return eval_That_rep(f, inv) == borel_T(f, inv);
    });
    batch("n-dof representation, r=1", [&] {
        auto f = random_series(B1, w, nterms(rng), rng), g = random_series(B1, w, nterms(rng), rng);
        return eval_formulahigh(f, g, 1) == borel_star(f, g, StarKind::standard);
    });
    batch("n-dof representation, r=2", [&] {
        auto f = random_series(B2, w, nterms(rng), rng), g = random_series(B2, w, nterms(rng), rng);
        return eval_formulahigh(f, g, 2) == borel_star(f, g, StarKind::standard);
    });
    batch("hadamard contour", [&] {
        auto f = random_univariate(X, w.deg_t, rng), g = random_univariate(X, w.deg_t, rng);
        return hadamard_contour(f, g) == hadamard(f, g);
    });
    r.run("borel star regression xi^3/3!", [&](std::string& d) {
        auto got = eval_borel_star_rep(parse_series("xi*p", B1, {8, 8}), parse_series("xi*q", B1, {8, 8}));
        return detail::expect_text(d, to_string(got), "1/2*xi^2*p*q + 1/6*xi^3");
    });
    return r;
}

/// Random rational (q, p) with |q|, |p| <= 1/2.
inline std::vector<Bindings> random_phase_points(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<int> num(-8, 8), den(17, 32);
    std::vector<Bindings> out;
    for (int i = 0; i < n; ++i)
        out.push_back({{"q", make_rational(num(rng), den(rng))}, {"p", make_rational(num(rng), den(rng))}});
    return out;
}

struct RadiusSuiteOptions {
    std::uint64_t seed = default_seed;
    int points = 10;
    int euler_order = 20;
    int log_order = 40;
    double euler_tol = 1e-6;
    double log_tol = 0.1;
    RadiusMethod method = RadiusMethod::ratio;
};

/// Radius estimates of the Borel-plane Euler and log families against the
/// distance to their locus, plus a shifted-locus negative control that must fail.
inline SuiteReport run_radius_suite(const RadiusSuiteOptions& opt, std::vector<RadiusReport>* reports = nullptr)
{
    SuiteReport r{"radius", {}};
    std::mt19937_64 rng(opt.seed);
    auto points = random_phase_points(rng, opt.points);
    Variety locus = euler_family_locus();
    auto family = [&](const std::string& name, const CoefficientSource& src, double tol, const Variety& v,
                      bool expect_pass) {
        r.run(name, [&](std::string& d) {
            auto reps = check_radius_vs_locus(src, v, points, opt.method, tol);
            bool all = true, any = false;
            double worst = 0;
            for (const auto& rep : reps) {
                all = all && rep.pass;
                any = any || rep.pass;
                worst = std::max(worst, rep.relative_gap);
                if (reports)
                    reports->push_back(rep);
            }
            d = "worst gap " + format_double(worst);
            return expect_pass ? all : !any;
        });
    };
    int eo = opt.euler_order, lo = opt.log_order;
    family("borel euler family", [eo](const Bindings& b) { return borel_euler_coefficients(b, eo); }, opt.euler_tol,
           locus, true);
    family("borel log family", [lo](const Bindings& b) { return borel_log_coefficients(b, lo); }, opt.log_tol, locus,
           true);
    family("shifted locus is rejected", [eo](const Bindings& b) { return borel_euler_coefficients(b, eo); },
           opt.euler_tol, euler_family_locus(1), false);
    return r;
}

inline std::string to_string(const SuiteReport& r)
{
    std::string out;
    for (const auto& c : r.checks) {
        out += (c.pass ? "PASS  " : "FAIL  ") + c.name;
        if (!c.detail.empty())
            out += "  (" + c.detail + ")";
        out += "\n";
    }
    out += r.suite + ": " + (r.all_pass() ? "all passed" : "FAILED") + "\n";
    return out;
}

} // namespace dq
