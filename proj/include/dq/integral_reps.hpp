#pragma once

#include "dq/borel.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq {

/// var -> var + coefficient * z^power
struct LaurentShift {
    std::size_t var;
    MultiPoly coefficient;
    int z_power;
};

/// Laurent polynomial in a contour variable z with polynomial coefficients.
/// On the unit circle z = e^{i theta}, so the theta-average is the z^0 mode
/// and (1/2 pi i) \oint dz is the z^-1 mode.
class LaurentSlice {
public:
    explicit LaurentSlice(VariableSet vars) : vars_(std::move(vars)) {}

    static LaurentSlice from_poly(const MultiPoly& p, int power = 0)
    {
        LaurentSlice s(p.vars());
        s.add(power, p);
        return s;
    }

    const VariableSet& vars() const { return vars_; }
    const std::map<int, MultiPoly>& modes() const { return modes_; }

    void add(int power, const MultiPoly& p)
    {
        if (p.is_zero())
            return;
        auto it = modes_.find(power);
        if (it == modes_.end())
            modes_.emplace(power, p);
        else if ((it->second += p).is_zero())
            modes_.erase(it);
    }

    MultiPoly coefficient(int k) const
    {
        auto it = modes_.find(k);
        return it == modes_.end() ? MultiPoly(vars_) : it->second;
    }

    MultiPoly contour_integral() const { return coefficient(-1); }
    MultiPoly theta_average() const { return coefficient(0); }

    LaurentSlice shifted(int k) const
    {
        LaurentSlice s(vars_);
        for (const auto& [power, p] : modes_)
            s.modes_.emplace(power + k, p);
        return s;
    }

    friend LaurentSlice operator*(const LaurentSlice& a, const LaurentSlice& b)
    {
        LaurentSlice s(a.vars_);
        for (const auto& [i, p] : a.modes_)
            for (const auto& [j, r] : b.modes_)
                s.add(i + j, p * r);
        return s;
    }

    /// Binomial expansion of every mode under var -> var + c z^k.
    LaurentSlice substitute(const LaurentShift& shift) const
    {
        LaurentSlice s(vars_);
        std::vector<MultiPoly> powers{MultiPoly::constant(vars_, 1)};
        for (const auto& [mode, p] : modes_) {
            std::map<int, TermMap> acc;
            for (const auto& [e, c] : p.terms()) {
                int d = e[shift.var];
                while (static_cast<int>(powers.size()) <= d)
                    powers.push_back(powers.back() * shift.coefficient);
                Exponents base = e;
                for (int m = 0; m <= d; ++m) {
                    base[shift.var] = d - m;
                    Rational k = c * binomial(d, m);
                    TermMap& out = acc[mode + m * shift.z_power];
                    for (const auto& [f, cf] : powers[m].terms()) {
                        Exponents g = base;
                        for (std::size_t v = 0; v < g.size(); ++v)
                            g[v] += f[v];
                        add_to(out, g, k * cf);
                    }
                }
            }
            for (auto& [power, terms] : acc)
                s.add(power, MultiPoly(vars_, std::move(terms)));
        }
        return s;
    }

private:
    VariableSet vars_;
    std::map<int, MultiPoly> modes_;
};

inline LaurentSlice laurent_shift(const MultiPoly& p, const std::vector<LaurentShift>& shifts)
{
    LaurentSlice s = LaurentSlice::from_poly(p);
    for (const auto& sh : shifts)
        s = s.substitute(sh);
    return s;
}

namespace detail {

/// Scratch variable set: the output's distinguished variable, then helper
/// variables, then the output's phase-space names.
struct RepWorkspace {
    VariableSet out;
    VariableSet work;
    std::vector<std::size_t> weight_vars;
    std::vector<std::size_t> xy_vars;

    std::size_t idx(const std::string& name) const { return work.index_of(name); }
    MultiPoly var(const std::string& name) const { return MultiPoly::variable(work, name); }
};

inline RepWorkspace make_workspace(const VariableSet& out, const std::vector<std::string>& weight_helpers,
                                   const std::vector<std::string>& other_helpers)
{
    std::vector<std::string> names{out.distinguished()};
    names.insert(names.end(), weight_helpers.begin(), weight_helpers.end());
    names.insert(names.end(), other_helpers.begin(), other_helpers.end());
    names.insert(names.end(), out.names().begin() + 1, out.names().end());
    RepWorkspace ws{out, VariableSet(names), {}, {}};
    ws.weight_vars.push_back(0);
    for (const auto& h : weight_helpers)
        ws.weight_vars.push_back(ws.work.index_of(h));
    for (std::size_t i = 1; i < out.size(); ++i)
        ws.xy_vars.push_back(ws.work.index_of(out.name(i)));
    return ws;
}

inline std::string helper(const char* stem, int i) { return std::string("__") + stem + std::to_string(i); }

/// Drops terms whose final xi-degree or (q,p)-degree exceeds the window.
/// Returns whether anything was dropped.
inline bool prune(MultiPoly& p, const RepWorkspace& ws, const Truncation& w)
{
    TermMap kept;
    bool dropped = false;
    for (const auto& [e, c] : p.terms()) {
        int weight = 0, xy = 0;
        for (std::size_t v : ws.weight_vars)
            weight += e[v];
        for (std::size_t v : ws.xy_vars)
            xy += e[v];
        if (weight <= w.deg_t && xy <= w.deg_xy)
            kept.emplace(e, c);
        else
            dropped = true;
    }
    p = MultiPoly(p.vars(), std::move(kept));
    return dropped;
}

/// Replaces s^(2a) by x^a; odd powers of s must not occur.
inline MultiPoly eliminate_square_root(const MultiPoly& p, std::size_t s, std::size_t x)
{
    TermMap out;
    for (const auto& [e, c] : p.terms()) {
        if (e[s] % 2 != 0)
            throw std::logic_error("odd power of a square-root variable survived averaging");
        Exponents f = e;
        f[x] += f[s] / 2;
        f[s] = 0;
        add_to(out, f, c);
    }
    return MultiPoly(p.vars(), std::move(out));
}

/// \int_0^xi dx_1 \int_0^{xi - x_1} dx_2 ... innermost last.
inline MultiPoly simplex_integral(MultiPoly p, const std::vector<std::size_t>& xs)
{
    const VariableSet& vars = p.vars();
    for (std::size_t k = xs.size(); k-- > 0;) {
        MultiPoly upper = MultiPoly::variable(vars, vars.distinguished());
        for (std::size_t i = 0; i < k; ++i)
            upper -= MultiPoly::variable(vars, vars.name(xs[i]));
        p = p.integrate(xs[k]).substitute(xs[k], upper);
    }
    return p;
}

inline FormalSeries finish(const RepWorkspace& ws, MultiPoly p, const std::vector<std::size_t>& xs, int order,
                           const Truncation& w, bool complete)
{
    p = simplex_integral(std::move(p), xs).derivative(std::size_t{0}, order);
    return FormalSeries::from_poly(p.embed(ws.out), w, complete);
}

inline void require_one_dof(const FormalSeries& f)
{
    if (f.vars().dof() != 1)
        throw std::invalid_argument("this representation is stated for one degree of freedom");
}

} // namespace detail

/// Integrand of the Borel-star representation before theta-averaging, as a
/// Laurent polynomial in z = e^{i theta}, together with what the remaining
/// steps need.
struct BorelStarIntegrand {
    detail::RepWorkspace ws;
    LaurentSlice slice;
    Truncation window;
    bool complete;
};

inline BorelStarIntegrand borel_star_rep_integrand(const FormalSeries& fhat, const FormalSeries& ghat)
{
    detail::require_one_dof(fhat);
    fhat.poly().require_same(ghat.poly());
    const VariableSet& vars = fhat.vars();
    auto ws = detail::make_workspace(vars, {"__x1", "__x2", "__x3"}, {"__s"});
    const std::string& xi = vars.distinguished();
    MultiPoly f = fhat.poly().embed(ws.work, {{xi, "__x1"}});
    MultiPoly g = ghat.poly().embed(ws.work, {{xi, "__x2"}});
    MultiPoly s = ws.var("__s");
    std::size_t q = ws.idx(vars.name(vars.q(0))), p = ws.idx(vars.name(vars.p(0)));
    LaurentSlice slice = laurent_shift(f, {{p, s, -1}}) * laurent_shift(g, {{q, s, 1}});
    return {ws, slice, weighted_exact_window({&fhat, &ghat}), all_complete({&fhat, &ghat})};
}

/// d^3/dxi^3 \int\int\int (theta-average of the integrand), from an already
/// averaged integrand.
inline FormalSeries borel_star_rep_finish(const BorelStarIntegrand& in, const MultiPoly& averaged)
{
    const auto& ws = in.ws;
    MultiPoly h = detail::eliminate_square_root(averaged, ws.idx("__s"), ws.idx("__x3"));
    bool dropped = detail::prune(h, ws, in.window);
    return detail::finish(ws, std::move(h), {ws.idx("__x1"), ws.idx("__x2"), ws.idx("__x3")}, 3, in.window,
                          in.complete && !dropped);
}

/// Standard Borel-star product through its triple-integral representation.
inline FormalSeries eval_borel_star_rep(const FormalSeries& fhat, const FormalSeries& ghat)
{
    auto in = borel_star_rep_integrand(fhat, ghat);
    return borel_star_rep_finish(in, in.slice.theta_average());
}

/// Moyal Borel-star product through its quadruple-integral, double-contour
/// representation. Each contour picks the z^0 mode (the residue of the
/// integrand divided by z).
inline FormalSeries eval_moyal_rep(const FormalSeries& fhat, const FormalSeries& ghat)
{
    detail::require_one_dof(fhat);
    fhat.poly().require_same(ghat.poly());
    const VariableSet& vars = fhat.vars();
    const std::string& xi = vars.distinguished();
    const std::string& qn = vars.name(vars.q(0));
    const std::string& pn = vars.name(vars.p(0));
    auto ws = detail::make_workspace(vars, {"__x1", "__x2", "__x3", "__x4"}, {"__qf", "__pf", "__qg", "__pg"});
    MultiPoly f = fhat.poly().embed(ws.work, {{xi, "__x1"}, {qn, "__qf"}, {pn, "__pf"}});
    MultiPoly g = ghat.poly().embed(ws.work, {{xi, "__x2"}, {qn, "__qg"}, {pn, "__pg"}});
    MultiPoly one = MultiPoly::constant(ws.work, 1);
    Rational half(1, 2);

    LaurentSlice z1 = laurent_shift(f * g, {{ws.idx("__qf"), one, 1}, {ws.idx("__pg"), ws.var("__x3") * -half, -1}});
    MultiPoly h = z1.shifted(-1).contour_integral();
    LaurentSlice z2 = laurent_shift(h, {{ws.idx("__pf"), one, 1}, {ws.idx("__qg"), ws.var("__x4") * half, -1}});
    h = z2.shifted(-1).contour_integral();
    h = h.embed(ws.work, {{"__qf", qn}, {"__qg", qn}, {"__pf", pn}, {"__pg", pn}});

    Truncation w = weighted_exact_window({&fhat, &ghat});
    bool dropped = detail::prune(h, ws, w);
    return detail::finish(ws, std::move(h), {ws.idx("__x1"), ws.idx("__x2"), ws.idx("__x3"), ws.idx("__x4")}, 4, w,
                          all_complete({&fhat, &ghat}) && !dropped);
}

/// Borel transition operator through d/dxi \int_0^xi dxi_1 \oint dz/z.
inline FormalSeries eval_That_rep(const FormalSeries& fhat, bool inverse = false)
{
    detail::require_one_dof(fhat);
    const VariableSet& vars = fhat.vars();
    const std::string& xi = vars.distinguished();
    auto ws = detail::make_workspace(vars, {"__x1"}, {"__y"});
    MultiPoly f = fhat.poly().embed(ws.work, {{xi, "__y"}});
    f = f.substitute(ws.idx("__y"), ws.var(xi) - ws.var("__x1"));
    Rational sign = inverse ? Rational(1, 2) : Rational(-1, 2);
    std::size_t q = ws.idx(vars.name(vars.q(0))), p = ws.idx(vars.name(vars.p(0)));
    LaurentSlice slice = laurent_shift(
        f, {{q, MultiPoly::constant(ws.work, 1), 1}, {p, ws.var("__x1") * sign, -1}});
    MultiPoly h = slice.shifted(-1).contour_integral();

    Truncation w = weighted_exact_window({&fhat});
    bool dropped = detail::prune(h, ws, w);
    return detail::finish(ws, std::move(h), {ws.idx("__x1")}, 1, w, fhat.is_complete() && !dropped);
}

/// Standard Borel-star product for r degrees of freedom through r + 2 nested
/// integrals and r theta-averages.
inline FormalSeries eval_formulahigh(const FormalSeries& fhat, const FormalSeries& ghat, int r)
{
    if (r < 1 || fhat.vars().dof() != r)
        throw std::invalid_argument("dof of the inputs does not match r");
    fhat.poly().require_same(ghat.poly());
    const VariableSet& vars = fhat.vars();
    const std::string& xi = vars.distinguished();
    std::vector<std::string> xs, others;
    for (int i = 1; i <= r + 2; ++i)
        xs.push_back(detail::helper("x", i));
    for (int j = 1; j <= r; ++j) {
        others.push_back(detail::helper("s", j));
        others.push_back(detail::helper("pf", j));
        others.push_back(detail::helper("qg", j));
    }
    auto ws = detail::make_workspace(vars, xs, others);
    std::vector<std::pair<std::string, std::string>> fren{{xi, xs[r]}}, gren{{xi, xs[r + 1]}}, merge;
    for (int j = 0; j < r; ++j) {
        fren.emplace_back(vars.name(vars.p(j)), detail::helper("pf", j + 1));
        gren.emplace_back(vars.name(vars.q(j)), detail::helper("qg", j + 1));
        merge.emplace_back(detail::helper("pf", j + 1), vars.name(vars.p(j)));
        merge.emplace_back(detail::helper("qg", j + 1), vars.name(vars.q(j)));
    }
    MultiPoly h = fhat.poly().embed(ws.work, fren) * ghat.poly().embed(ws.work, gren);
    for (int j = 1; j <= r; ++j) {
        MultiPoly s = ws.var(detail::helper("s", j));
        LaurentSlice slice =
            laurent_shift(h, {{ws.idx(detail::helper("pf", j)), s, -1}, {ws.idx(detail::helper("qg", j)), s, 1}});
        h = detail::eliminate_square_root(slice.theta_average(), ws.idx(detail::helper("s", j)),
                                          ws.idx(detail::helper("x", j)));
    }
    h = h.embed(ws.work, merge);

    Truncation w = weighted_exact_window({&fhat, &ghat});
    bool dropped = detail::prune(h, ws, w);
    std::vector<std::size_t> order;
    for (const auto& x : xs)
        order.push_back(ws.idx(x));
    return detail::finish(ws, std::move(h), order, r + 2, w, all_complete({&fhat, &ghat}) && !dropped);
}

/// (1/2 pi i) \oint phi(z) psi(xi/z) dz/z, extracted termwise.
inline FormalSeries hadamard_contour(const FormalSeries& phi, const FormalSeries& psi)
{
    detail::require_univariate(phi);
    phi.poly().require_same(psi.poly());
    LaurentSlice a(phi.vars()), b(phi.vars());
    for (const auto& [e, c] : phi.terms())
        a.add(e[0], MultiPoly::constant(phi.vars(), c));
    for (const auto& [e, c] : psi.terms())
        b.add(-e[0], MultiPoly::monomial(phi.vars(), e, c));
    MultiPoly h = (a * b).shifted(-1).contour_integral();
    Truncation w = Truncation::meet(phi.trunc(), psi.trunc());
    auto fits = [&](const FormalSeries& s) {
        return s.is_complete() && s.poly().total_degree() <= w.deg_t;
    };
    return FormalSeries::from_poly(h, w, fits(phi) || fits(psi));
}

} // namespace dq
