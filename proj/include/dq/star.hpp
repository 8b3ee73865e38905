#pragma once

#include "dq/series.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq {

enum class StarKind { standard, moyal };

inline std::string to_string(StarKind k) { return k == StarKind::standard ? "standard" : "moyal"; }

inline StarKind parse_star_kind(std::string_view s)
{
    if (s == "standard" || s == "S")
        return StarKind::standard;
    if (s == "moyal" || s == "M")
        return StarKind::moyal;
    throw std::invalid_argument("unknown star kind '" + std::string(s) + "'");
}

/// One factor d_{left} (x) d_{right} of a bidifferential generator, scaled by weight.
struct DiffPair {
    std::size_t left;
    std::size_t right;
    Rational weight;
};

namespace detail {

inline void require_phase_space(const FormalSeries& f)
{
    if (!f.vars().is_phase_space())
        throw std::invalid_argument("star products need a phase-space variable set (dof >= 1)");
}

} // namespace detail

/// mu o exp(t * sum_i w_i d_{left_i} (x) d_{right_i}) (f (x) g), exact on the
/// weighted window of the inputs.
inline FormalSeries bidifferential_exp(const FormalSeries& f, const FormalSeries& g, std::span<const DiffPair> pairs)
{
    f.poly().require_same(g.poly());
    Truncation window = weighted_exact_window({&f, &g});
    TermMap out;
    bool dropped = false;
    std::size_t n = f.vars().size();
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            int t0 = a[0] + b[0];
            if (t0 > window.deg_t) {
                dropped = true;
                continue;
            }
            std::vector<int> da(n, 0), db(n, 0);
            // Iterative depth-first walk over the derivative orders k_i.
            std::vector<int> k(pairs.size(), 0);
            std::vector<Rational> coeff(pairs.size() + 1);
            coeff[0] = ca * cb;
            std::size_t level = 0;
            int tdeg = t0;
            Exponents e(n);
            // Each level either descends with k_i = 0 or increments k_i.
            while (true) {
                if (level == pairs.size()) {
                    for (std::size_t v = 0; v < n; ++v)
                        e[v] = a[v] - da[v] + b[v] - db[v];
                    e[0] = tdeg;
                    if (window.retains(e))
                        add_to(out, e, coeff[level]);
                    else
                        dropped = true;
                    // backtrack to the deepest level that can still increment
                    while (true) {
                        if (level == 0)
                            goto next_pair;
                        --level;
                        const DiffPair& pr = pairs[level];
                        int ra = a[pr.left] - da[pr.left];
                        int rb = b[pr.right] - db[pr.right];
                        if (ra > 0 && rb > 0) {
                            if (tdeg + 1 > window.deg_t) {
                                dropped = true;
                            } else {
                                ++k[level];
                                coeff[level] *= pr.weight * ra * rb;
                                coeff[level] /= k[level];
                                ++da[pr.left];
                                ++db[pr.right];
                                ++tdeg;
                                break;
                            }
                        }
                        // exhausted: undo this level's derivatives
                        da[pr.left] -= k[level];
                        db[pr.right] -= k[level];
                        tdeg -= k[level];
                        k[level] = 0;
                    }
                    coeff[level + 1] = coeff[level];
                    ++level;
                    continue;
                }
                coeff[level + 1] = coeff[level];
                ++level;
            }
        next_pair:;
        }
    FormalSeries result = FormalSeries::from_poly(MultiPoly(f.vars(), std::move(out)), window, all_complete({&f, &g}));
    if (dropped)
        result = result.as_truncation();
    return result;
}

inline std::vector<DiffPair> star_pairs(const VariableSet& vars, StarKind kind)
{
    std::vector<DiffPair> pairs;
    for (int j = 0; j < vars.dof(); ++j) {
        if (kind == StarKind::standard) {
            pairs.push_back({vars.p(j), vars.q(j), Rational(1)});
        } else {
            pairs.push_back({vars.p(j), vars.q(j), Rational(1, 2)});
            pairs.push_back({vars.q(j), vars.p(j), Rational(-1, 2)});
        }
    }
    return pairs;
}

inline FormalSeries star(const FormalSeries& f, const FormalSeries& g, StarKind kind)
{
    detail::require_phase_space(f);
    f.poly().require_same(g.poly());
    auto pairs = star_pairs(f.vars(), kind);
    return bidifferential_exp(f, g, pairs);
}

inline FormalSeries standard_star(const FormalSeries& f, const FormalSeries& g) { return star(f, g, StarKind::standard); }
inline FormalSeries moyal_star(const FormalSeries& f, const FormalSeries& g) { return star(f, g, StarKind::moyal); }

/// (f *M g - g *M f) / t.
inline FormalSeries moyal_commutator(const FormalSeries& f, const FormalSeries& g)
{
    FormalSeries diff = moyal_star(f, g) - moyal_star(g, f);
    if (diff.trunc().deg_t < 1)
        throw std::domain_error("the commutator needs a window with deg_t >= 1");
    TermMap out;
    for (const auto& [e, c] : diff.terms()) {
        if (e[0] == 0)
            throw std::logic_error("star commutator not divisible by t");
        Exponents s = e;
        --s[0];
        out.emplace(std::move(s), c);
    }
    Truncation w{diff.trunc().deg_t - 1, diff.trunc().deg_xy};
    FormalSeries r = FormalSeries::from_poly(MultiPoly(diff.vars(), std::move(out)), w, diff.is_complete());
    return r;
}

/// exp(-/+ (t/2) sum_j d_qj d_pj): the forward operator (inverse = false)
/// carries the minus sign.
inline FormalSeries transition_T(const FormalSeries& f, bool inverse = false)
{
    detail::require_phase_space(f);
    const VariableSet& vars = f.vars();
    Truncation window = weighted_exact_window({&f});
    Rational w = inverse ? Rational(1, 2) : Rational(-1, 2);
    TermMap out;
    bool dropped = false;
    int dof = vars.dof();
    for (const auto& [a, ca] : f.terms()) {
        // Per dof j the factor sum_n w^n t^n/n! dq^n dp^n; enumerate the n_j.
        std::vector<int> n(dof, 0);
        while (true) {
            int tdeg = a[0];
            Rational c = ca;
            Exponents e = a;
            for (int j = 0; j < dof; ++j) {
                std::size_t q = vars.q(j), p = vars.p(j);
                c *= pow(w, n[j]) * falling_factorial(a[q], n[j]) * falling_factorial(a[p], n[j]) / factorial(n[j]);
                e[q] -= n[j];
                e[p] -= n[j];
                tdeg += n[j];
            }
            e[0] = tdeg;
            if (window.retains(e))
                add_to(out, e, c);
            else if (c != 0)
                dropped = true;
            int j = 0;
            for (; j < dof; ++j) {
                if (n[j] < std::min(a[vars.q(j)], a[vars.p(j)])) {
                    ++n[j];
                    break;
                }
                n[j] = 0;
            }
            if (j == dof)
                break;
        }
    }
    FormalSeries r = FormalSeries::from_poly(MultiPoly(vars, std::move(out)), window, f.is_complete());
    return dropped ? r.as_truncation() : r;
}

/// Poisson bracket sum_j (df/dpj dg/dqj - df/dqj dg/dpj), matching the
/// sign convention of the star products (so {p, q} = 1).
inline FormalSeries poisson_bracket(const FormalSeries& f, const FormalSeries& g)
{
    detail::require_phase_space(f);
    const VariableSet& vars = f.vars();
    FormalSeries sum(vars, Truncation::meet(f.trunc(), g.trunc()));
    for (int j = 0; j < vars.dof(); ++j) {
        const std::string& q = vars.name(vars.q(j));
        const std::string& p = vars.name(vars.p(j));
        sum += f.derivative(p) * g.derivative(q) - f.derivative(q) * g.derivative(p);
    }
    return sum;
}

} // namespace dq
