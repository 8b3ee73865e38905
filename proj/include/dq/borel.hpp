#pragma once

#include "dq/star.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dq {

namespace detail {

inline FormalSeries rescale_distinguished(const FormalSeries& f, const std::string& name, bool forward)
{
    VariableSet vars = f.vars().with_distinguished(name);
    TermMap out;
    for (const auto& [e, c] : f.terms())
        out.emplace(e, forward ? Rational(c / factorial(e[0])) : Rational(c * factorial(e[0])));
    return FormalSeries::from_poly(MultiPoly(vars, std::move(out)), f.trunc(), f.is_complete());
}

} // namespace detail

/// t^n -> xi^n / n!, renaming the distinguished variable.
inline FormalSeries borel(const FormalSeries& f, const std::string& name = "xi")
{
    return detail::rescale_distinguished(f, name, true);
}

inline FormalSeries inverse_borel(const FormalSeries& fhat, const std::string& name = "t")
{
    return detail::rescale_distinguished(fhat, name, false);
}

namespace detail {

inline std::string deformation_name(const VariableSet& vars)
{
    std::string name = "t";
    while (vars.contains(name) && vars.distinguished() != name)
        name += "_";
    return name;
}

} // namespace detail

/// beta(beta^-1 fhat * beta^-1 ghat).
inline FormalSeries borel_star(const FormalSeries& fhat, const FormalSeries& ghat, StarKind kind)
{
    fhat.poly().require_same(ghat.poly());
    std::string t = detail::deformation_name(fhat.vars());
    return borel(star(inverse_borel(fhat, t), inverse_borel(ghat, t), kind), fhat.vars().distinguished());
}

/// beta T^{+-1} beta^-1.
inline FormalSeries borel_T(const FormalSeries& fhat, bool inverse = false)
{
    std::string t = detail::deformation_name(fhat.vars());
    return borel(transition_T(inverse_borel(fhat, t), inverse), fhat.vars().distinguished());
}

namespace detail {

inline void require_univariate(const FormalSeries& f)
{
    if (f.vars().size() != 1)
        throw std::invalid_argument("expected a univariate series");
}

} // namespace detail

/// Coefficientwise product sum a_n b_n xi^n.
inline FormalSeries hadamard(const FormalSeries& phi, const FormalSeries& psi)
{
    detail::require_univariate(phi);
    phi.poly().require_same(psi.poly());
    Truncation w = Truncation::meet(phi.trunc(), psi.trunc());
    TermMap out;
    for (const auto& [e, c] : phi.terms())
        if (w.retains(e)) {
            Rational d = psi.coefficient(e);
            if (d != 0)
                out.emplace(e, c * d);
        }
    // A complete factor whose terms all fit kills every coefficient beyond it.
    auto fits = [&](const FormalSeries& s) {
        return s.is_complete() && std::all_of(s.terms().begin(), s.terms().end(),
                                              [&](const auto& kv) { return w.retains(kv.first); });
    };
    return FormalSeries::from_poly(MultiPoly(phi.vars(), std::move(out)), w, fits(phi) || fits(psi));
}

/// sum_a (d_i^a d_j^a F) / (a!)^2 xi^a with a new distinguished variable xi
/// prepended; the former distinguished variable becomes an ordinary one.
///
/// Complete inputs keep everything. For a truncated input with window
/// (D, E), the output window (A, B) satisfies B <= D and B + 2A <= E, so every
/// retained coefficient only involves known input coefficients; A = floor(E/3).
inline FormalSeries odot_ij(const FormalSeries& F, std::string_view zi, std::string_view zj, const std::string& xi = "xi")
{
    const VariableSet& in = F.vars();
    std::size_t i = in.index_of(zi), j = in.index_of(zj);
    if (i == j)
        throw std::invalid_argument("odot needs two different variables");
    if (i == 0 || j == 0)
        throw std::invalid_argument("odot cannot act on the distinguished variable");
    if (in.contains(xi))
        throw std::invalid_argument("variable '" + xi + "' already in use");
    std::vector<std::string> names{xi};
    names.insert(names.end(), in.names().begin(), in.names().end());
    VariableSet out_vars(std::move(names));

    TermMap out;
    int max_a = 0, max_rest = 0;
    for (const auto& [e, c] : F.terms()) {
        int top = std::min(e[i], e[j]);
        for (int a = 0; a <= top; ++a) {
            Exponents f(e.size() + 1);
            f[0] = a;
            std::copy(e.begin(), e.end(), f.begin() + 1);
            f[i + 1] -= a;
            f[j + 1] -= a;
            Rational k = falling_factorial(e[i], a) * falling_factorial(e[j], a) / (factorial(a) * factorial(a));
            add_to(out, f, c * k);
            max_a = std::max(max_a, a);
            max_rest = std::max(max_rest, total_degree(e) - 2 * a);
        }
    }
    Truncation w;
    if (F.is_complete()) {
        w = {max_a, max_rest};
    } else {
        int a = F.trunc().deg_xy / 3;
        w = {a, std::min(F.trunc().deg_t, F.trunc().deg_xy - 2 * a)};
    }
    return FormalSeries::from_poly(MultiPoly(out_vars, std::move(out)), w, F.is_complete());
}

} // namespace dq
