#pragma once

#include "dq/borel.hpp"
#include "dq/locus.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq {

/// 15 significant digits, the repo-wide numeric output format.
inline std::string format_double(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

/// Complex roots of sum_i c_i x^i (c given low to high degree).
inline std::vector<std::complex<double>> polynomial_roots(std::vector<double> c)
{
    while (!c.empty() && c.back() == 0.0)
        c.pop_back();
    if (c.size() < 2)
        return {};
    if (c.size() == 2)
        return {std::complex<double>(-c[0] / c[1], 0.0)};
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        coeffs[static_cast<Eigen::Index>(i)] = c[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    const auto& r = solver.roots();
    return {r.data(), r.data() + r.size()};
}

enum class RadiusMethod { ratio, root };

inline std::string to_string(RadiusMethod m) { return m == RadiusMethod::ratio ? "ratio" : "root"; }

inline RadiusMethod parse_radius_method(std::string_view s)
{
    if (s == "ratio")
        return RadiusMethod::ratio;
    if (s == "root")
        return RadiusMethod::root;
    throw std::invalid_argument("unknown radius method '" + std::string(s) + "'");
}

struct RadiusEstimate {
    double value;
    double spread;
    int order_used;
};

/// Radius of convergence of sum a_k x^k from its last coefficients.
/// Ratio: mean of |a_k / a_{k+1}| over the last five k (spread = max - min).
/// Root: |a_k|^(-1/k) at the largest k.
inline RadiusEstimate radius_estimate(const std::vector<Rational>& a, RadiusMethod method)
{
    constexpr std::size_t need = 8;
    if (a.size() < need)
        throw std::invalid_argument("radius estimate needs at least 8 coefficients");
    for (std::size_t k = a.size() - need; k < a.size(); ++k)
        if (a[k] == 0)
            throw std::invalid_argument("radius estimate needs a nonzero coefficient tail");
    int n = static_cast<int>(a.size()) - 1;
    if (method == RadiusMethod::root)
        return {std::exp(-log_abs(a[n]) / n), 0.0, n};
    double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int k = n - 5; k < n; ++k) {
        double r = std::exp(log_abs(a[k]) - log_abs(a[k + 1]));
        sum += r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {sum / 5, hi - lo, n};
}

/// Smallest modulus of a nonzero xi-root over every leaf of the variety once
/// the other variables are bound. Roots at xi = 0 are left out (the germs
/// compared against are regular at the origin); +inf when no leaf has one.
inline double locus_distance_xi(const Variety& v, const Bindings& point)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : v.components())
        for (const auto& l : u) {
            MultiPoly bound = l.poly.evaluate(point);
            for (std::size_t i = 1; i < bound.vars().size(); ++i)
                if (bound.depends_on(i))
                    throw std::invalid_argument("variable '" + bound.vars().name(i) + "' left unbound");
            if (bound.is_zero())
                throw std::domain_error("leaf '" + l.label + "' vanishes identically at this point");
            auto coeffs = bound.coefficients_in(std::size_t{0});
            std::size_t low = 0;
            while (low < coeffs.size() && coeffs[low].is_zero())
                ++low;
            std::vector<double> c;
            for (std::size_t i = low; i < coeffs.size(); ++i)
                c.push_back(to_double(coeffs[i].constant_term()));
            for (const auto& r : polynomial_roots(c))
                best = std::min(best, std::abs(r));
        }
    return best;
}

struct RadiusReport {
    Bindings point;
    double estimate;
    double spread;
    RadiusMethod method;
    int order_used;
    double locus_distance;
    double relative_gap;
    bool pass;
};

inline std::string to_string(const RadiusReport& r)
{
    std::ostringstream os;
    os << "point=(";
    for (std::size_t i = 0; i < r.point.size(); ++i)
        os << (i ? "," : "") << r.point[i].first << "=" << r.point[i].second.get_str();
    os << ") estimate=" << format_double(r.estimate) << " locus=" << format_double(r.locus_distance)
       << " gap=" << format_double(r.relative_gap) << " verdict=" << (r.pass ? "pass" : "fail");
    return os.str();
}

using CoefficientSource = std::function<std::vector<Rational>(const Bindings&)>;

/// Pass iff relative gap <= tol and estimate <= distance * (1 + tol).
inline std::vector<RadiusReport> check_radius_vs_locus(const CoefficientSource& series, const Variety& v,
                                                       const std::vector<Bindings>& points, RadiusMethod method,
                                                       double tol)
{
    std::vector<RadiusReport> out;
    for (const auto& pt : points) {
        RadiusEstimate est = radius_estimate(series(pt), method);
        double dist = locus_distance_xi(v, pt);
        double gap = dist > 0 && std::isfinite(dist) ? std::abs(est.value - dist) / dist
                                                     : std::numeric_limits<double>::infinity();
        bool pass = gap <= tol && est.value <= dist * (1 + tol);
        out.push_back({pt, est.value, est.spread, method, est.order_used, dist, gap, pass});
    }
    return out;
}

/// Coefficients of xi^0..xi^order of a series at (q, p) = point, for a series
/// over a one-dof Borel variable set.
inline std::vector<Rational> xi_coefficients(const FormalSeries& s, int order)
{
    std::vector<Rational> out(static_cast<std::size_t>(order) + 1);
    for (const auto& [e, c] : s.terms()) {
        if (xy_degree(e) != 0 || e[0] > order)
            continue;
        out[static_cast<std::size_t>(e[0])] = c;
    }
    return out;
}

namespace detail {

inline Rational binding(const Bindings& b, const std::string& name)
{
    for (const auto& [n, v] : b)
        if (n == name)
            return v;
    throw std::invalid_argument("missing value for '" + name + "'");
}

/// Taylor coefficients in u of h(x0 + u) for h = (1 - x)^-1 or log(1 - x)
/// without its constant term, as a truncated series in one phase variable.
inline FormalSeries recentred(const VariableSet& vars, std::size_t var, const Rational& x0, int order, bool log)
{
    Rational base = 1 - x0;
    if (base == 0)
        throw std::domain_error("expansion point on the singularity");
    TermMap terms;
    for (int k = log ? 1 : 0; k <= 2 * order; ++k) {
        Exponents e(vars.size(), 0);
        e[var] = k;
        Rational c = log ? Rational(Rational(-1) / (Rational(k) * pow(base, k))) : Rational(Rational(1) / pow(base, k + 1));
        add_to(terms, e, c);
    }
    return FormalSeries::from_poly(MultiPoly(vars, std::move(terms)), {order, 2 * order}, false);
}

inline std::vector<Rational> family_coefficients(const Bindings& point, int order, bool log)
{
    VariableSet vars = VariableSet::phase_space(1, "xi");
    Rational q0 = binding(point, "q"), p0 = binding(point, "p");
    FormalSeries f = recentred(vars, vars.p(0), p0, order, log);
    FormalSeries g = recentred(vars, vars.q(0), q0, order, log);
    return xi_coefficients(borel_star(f, g, StarKind::standard), order);
}

} // namespace detail

/// xi-coefficients at (q, p) of beta((1 - p)^-1 *S (1 - q)^-1), through xi^order.
inline std::vector<Rational> borel_euler_coefficients(const Bindings& point, int order)
{
    return detail::family_coefficients(point, order, false);
}

/// xi-coefficients at (q, p) of beta(log(1 - p) *S log(1 - q)) for xi^1..xi^order;
/// the xi^0 entry (log(1-p) log(1-q), irrational) is left at 0.
inline std::vector<Rational> borel_log_coefficients(const Bindings& point, int order)
{
    return detail::family_coefficients(point, order, true);
}

/// Locus of both families: xi = 0 or xi = (1 - p)(1 - q), plus a shift for
/// negative controls.
inline Variety euler_family_locus(const Rational& shift = 0)
{
    VariableSet vars = VariableSet::phase_space(1, "xi");
    MultiPoly one = MultiPoly::constant(vars, 1);
    MultiPoly sp = one - MultiPoly::variable(vars, "p");
    MultiPoly sq = one - MultiPoly::variable(vars, "q") + MultiPoly::constant(vars, shift);
    return hadamard_locus_1d(vars, {sp}, {sq});
}

struct QuadratureResult {
    std::vector<double> coeffs;
    bool aliasing;
};

/// Trapezoid rule with K nodes on the circle |z| = radius for
/// (1/2 pi i) \oint phi(z) psi(xi/z) dz/z, coefficient by coefficient.
/// Aliasing is flagged when K does not exceed the span of Fourier modes of
/// the integrand, deg phi + deg psi.
inline QuadratureResult quadrature_hadamard(const FormalSeries& phi, const FormalSeries& psi, int K,
                                            double radius = 1.0)
{
    if (phi.vars().size() != 1 || psi.vars().size() != 1)
        throw std::invalid_argument("expected univariate series");
    if (K < 1)
        throw std::invalid_argument("need at least one node");
    int dphi = std::max(phi.poly().total_degree(), 0), dpsi = std::max(psi.poly().total_degree(), 0);
    std::vector<double> a(static_cast<std::size_t>(dphi) + 1, 0.0), b(static_cast<std::size_t>(dpsi) + 1, 0.0);
    for (const auto& [e, c] : phi.terms())
        a[static_cast<std::size_t>(e[0])] = to_double(c);
    for (const auto& [e, c] : psi.terms())
        b[static_cast<std::size_t>(e[0])] = to_double(c);
    std::vector<std::complex<double>> nodes(static_cast<std::size_t>(K)), values(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        double theta = 2 * std::numbers::pi * k / K;
        std::complex<double> z = std::polar(radius, theta), acc = 0;
        for (std::size_t i = a.size(); i-- > 0;)
            acc = acc * z + a[i];
        nodes[static_cast<std::size_t>(k)] = z;
        values[static_cast<std::size_t>(k)] = acc;
    }
    int top = std::min(dphi, dpsi);
    std::vector<double> out(static_cast<std::size_t>(top) + 1, 0.0);
    for (int n = 0; n <= top; ++n) {
        std::complex<double> sum = 0;
        for (int k = 0; k < K; ++k)
            sum += values[static_cast<std::size_t>(k)] * std::pow(nodes[static_cast<std::size_t>(k)], -n);
        out[static_cast<std::size_t>(n)] = (sum / static_cast<double>(K)).real() * b[static_cast<std::size_t>(n)];
    }
    return {out, K <= dphi + dpsi};
}

} // namespace dq
