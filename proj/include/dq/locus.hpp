#pragma once

#include "dq/poly_algebra.hpp"

#include <algorithm>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq {

struct Leaf {
    std::string label;
    MultiPoly poly;
};

/// Intersection of unions of labeled polynomial zero sets.
class Variety {
public:
    explicit Variety(VariableSet vars) : vars_(std::move(vars)) {}

    const VariableSet& vars() const { return vars_; }
    const std::vector<std::vector<Leaf>>& components() const { return components_; }

    /// Adds one union. Nonzero constant leaves are dropped (empty zero set),
    /// repeated polynomials are kept once; an identically zero leaf is an error.
    void add_union(const std::vector<Leaf>& leaves)
    {
        std::vector<Leaf> kept;
        for (const auto& l : leaves) {
            if (!(l.poly.vars() == vars_))
                throw std::invalid_argument("leaf over a different variable set");
            if (l.poly.is_zero())
                throw std::invalid_argument("leaf '" + l.label + "' is identically zero");
            if (l.poly.is_constant())
                continue;
            MultiPoly n = normalize_unit(l.poly).second;
            bool seen = std::any_of(kept.begin(), kept.end(),
                                    [&](const Leaf& k) { return normalize_unit(k.poly).second == n; });
            if (!seen)
                kept.push_back({l.label, n});
        }
        components_.push_back(std::move(kept));
    }

    Variety intersected(const Variety& other) const
    {
        if (!(other.vars_ == vars_))
            throw std::invalid_argument("variety over a different variable set");
        Variety v = *this;
        v.components_.insert(v.components_.end(), other.components_.begin(), other.components_.end());
        return v;
    }

    /// Exact membership at a rational point.
    bool contains(const std::vector<Rational>& point) const
    {
        check_arity(point.size());
        return std::all_of(components_.begin(), components_.end(), [&](const std::vector<Leaf>& u) {
            return std::any_of(u.begin(), u.end(), [&](const Leaf& l) { return l.poly.evaluate_at(point) == 0; });
        });
    }

    /// Numeric membership: a leaf vanishes when |P(x)| <= tol * max(1, sum |c x^e|).
    bool contains_numeric(const std::vector<std::complex<double>>& point, double tol = 1e-9) const
    {
        check_arity(point.size());
        return std::all_of(components_.begin(), components_.end(), [&](const std::vector<Leaf>& u) {
            return std::any_of(u.begin(), u.end(), [&](const Leaf& l) { return leaf_vanishes(l, point, tol); });
        });
    }

    /// Labels of the leaves vanishing at a rational point, per union.
    std::vector<std::string> vanishing_labels(const std::vector<Rational>& point) const
    {
        check_arity(point.size());
        std::vector<std::string> out;
        for (const auto& u : components_)
            for (const auto& l : u)
                if (l.poly.evaluate_at(point) == 0)
                    out.push_back(l.label);
        return out;
    }

    static bool leaf_vanishes(const Leaf& l, const std::vector<std::complex<double>>& point, double tol)
    {
        double scale = std::max(1.0, l.poly.magnitude_at(point));
        return std::abs(l.poly.evaluate_numeric(point)) <= tol * scale;
    }

    /// Product of the leaves of union k (the same zero set as the union).
    MultiPoly union_polynomial(std::size_t k) const
    {
        MultiPoly p = MultiPoly::constant(vars_, 1);
        for (const auto& l : components_.at(k))
            p *= l.poly;
        return p;
    }

private:
    void check_arity(std::size_t n) const
    {
        if (n != vars_.size())
            throw std::invalid_argument("point has the wrong number of coordinates");
    }

    VariableSet vars_;
    std::vector<std::vector<Leaf>> components_;
};

inline std::string to_string(const Variety& v)
{
    std::ostringstream os;
    os << "intersect {\n";
    for (const auto& u : v.components()) {
        os << "  union {\n";
        for (const auto& l : u)
            os << "    cond \"" << l.label << "\": " << to_string(l.poly) << "\n";
        os << "  }\n";
    }
    os << "}";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Variety& v) { return os << to_string(v); }

namespace detail {

inline MultiPoly eval_zero(const MultiPoly& p, std::size_t var)
{
    return p.substitute(var, MultiPoly(p.vars()));
}

inline VariableSet union_vars(const VariableSet& a, const std::string& extra)
{
    return a.contains(extra) ? a : a.appended(extra);
}

/// Leaves describing where a polynomial in z degenerates: leading and
/// constant z-coefficients and the discriminant in z.
inline std::vector<Leaf> root_degeneration_leaves(const MultiPoly& w, std::size_t z, const VariableSet& out)
{
    UniOverPoly u(w, z);
    std::vector<Leaf> leaves{{"leading", u.leading().embed(out)}, {"constant", u.coeff(0).embed(out)}};
    if (u.degree() >= 1)
        leaves.push_back({"discriminant", discriminant_locus(u).embed(out)});
    return leaves;
}

} // namespace detail

enum class ConvCase { endpoint_generic = 1, endpoint_on_root = 2 };

struct ConvLocus {
    Variety variety;
    ConvCase which;
};

/// Candidate singular set of z -> \int_0^{Pbar} F(z_1, z_2, ...) dz_1 where F
/// is singular on {P = 0}. P lives over a set containing `var`; Pbar over the
/// output set, which must hold every other variable of P by name.
inline ConvLocus conv_locus(const MultiPoly& P, std::string_view var, const MultiPoly& Pbar)
{
    const VariableSet& out = Pbar.vars();
    std::size_t v = P.vars().index_of(var);
    UniOverPoly u(P, v);
    if (u.is_zero())
        throw std::invalid_argument("zero polynomial");
    if (!is_simple(u))
        throw std::invalid_argument("polynomial is not simple in '" + std::string(var) + "'; decompose it first");
    if (Pbar.constant_term() != 0)
        throw std::invalid_argument("the upper limit must vanish at the origin");
    if (out.contains(var))
        throw std::invalid_argument("the output variables must not contain the integration variable");
    for (std::size_t i = 0; i < P.vars().size(); ++i)
        if (i != v && P.depends_on(i) && !out.contains(P.vars().name(i)))
            throw std::invalid_argument("variable '" + P.vars().name(i) + "' missing from the output set");

    MultiPoly origin = detail::eval_zero(P, v);
    if (origin.is_zero())
        throw std::invalid_argument("the polynomial vanishes identically on the origin hyperplane");

    VariableSet wide = out.appended(std::string(var));
    MultiPoly Pw = P.embed(wide);
    MultiPoly endpoint = Pw.substitute(wide.index_of(var), Pbar.embed(wide)).embed(out);
    ConvCase which = endpoint.is_zero() ? ConvCase::endpoint_on_root : ConvCase::endpoint_generic;

    std::vector<Leaf> leaves{{"leading", u.leading().embed(out)}, {"origin", origin.embed(out)}};
    if (u.degree() >= 1)
        leaves.push_back({"discriminant", discriminant_locus(u).embed(out)});
    if (which == ConvCase::endpoint_generic)
        leaves.push_back({"endpoint", endpoint});
    Variety variety(out);
    variety.add_union(leaves);
    return {std::move(variety), which};
}

/// Same variety with `var` removed; no leaf may depend on it.
inline Variety conv_locus_drop_variable(const Variety& v, std::string_view var)
{
    std::size_t idx = v.vars().index_of(var);
    if (idx == 0 && v.vars().size() == 1)
        throw std::invalid_argument("cannot drop the only variable");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < v.vars().size(); ++i)
        if (i != idx)
            names.push_back(v.vars().name(i));
    VariableSet smaller(names);
    Variety out(smaller);
    for (const auto& u : v.components()) {
        std::vector<Leaf> leaves;
        for (const auto& l : u) {
            if (l.poly.depends_on(idx))
                throw std::invalid_argument("leaf '" + l.label + "' depends on '" + std::string(var) + "'");
            leaves.push_back({l.label, l.poly.embed(smaller)});
        }
        out.add_union(leaves);
    }
    return out;
}

/// {xi = 0} union {xi = s t : s in S_f, t in S_g}, as one leaf over the
/// variables of the singular points (which must not involve xi).
inline Variety hadamard_locus_1d(const VariableSet& vars, const std::vector<MultiPoly>& sf,
                                 const std::vector<MultiPoly>& sg)
{
    MultiPoly xi = MultiPoly::variable(vars, vars.distinguished());
    MultiPoly leaf = xi;
    std::vector<MultiPoly> seen;
    for (const auto& s : sf)
        for (const auto& t : sg) {
            MultiPoly prod = s.embed(vars) * t.embed(vars);
            if (prod.depends_on(std::size_t{0}))
                throw std::invalid_argument("singular points must not involve the distinguished variable");
            if (std::find(seen.begin(), seen.end(), prod) != seen.end())
                continue;
            seen.push_back(prod);
            leaf *= xi - prod;
        }
    Variety v(vars);
    v.add_union({{"hadamard", leaf}});
    return v;
}

inline Variety hadamard_locus_1d(const std::vector<Rational>& sf, const std::vector<Rational>& sg,
                                 const std::string& xi = "xi")
{
    VariableSet vars({xi});
    std::vector<MultiPoly> a, b;
    for (const auto& s : sf)
        a.push_back(MultiPoly::constant(vars, s));
    for (const auto& t : sg)
        b.push_back(MultiPoly::constant(vars, t));
    return hadamard_locus_1d(vars, a, b);
}

/// Output variables of hadamard_locus_5var.
inline VariableSet hadamard_5var_vars() { return VariableSet({"xi1", "xi2", "xi3", "q", "p"}); }

/// W(z) = z^N Pf(xi1, q, p + z) Qg(xi2, q + xi3/z, p), N = deg_q Qg.
/// Pf is given over variables named among xi1, q, p; Qg among xi2, q, p.
inline MultiPoly hadamard_W(const MultiPoly& Pf, const MultiPoly& Qg)
{
    VariableSet work({"xi1", "xi2", "xi3", "q", "p", "z"});
    MultiPoly f = Pf.embed(work), g = Qg.embed(work);
    if (f.depends_on(work.index_of("xi2")) || f.depends_on(work.index_of("xi3")))
        throw std::invalid_argument("Pf may only involve xi1, q, p");
    if (g.depends_on(work.index_of("xi1")) || g.depends_on(work.index_of("xi3")))
        throw std::invalid_argument("Qg may only involve xi2, q, p");
    MultiPoly z = MultiPoly::variable(work, "z");
    f = f.substitute(work.index_of("p"), MultiPoly::variable(work, "p") + z);
    // z^N Qg(q + xi3/z): each q^k term contributes (q z + xi3)^k z^(N-k).
    std::size_t qi = work.index_of("q");
    int N = g.degree(qi);
    MultiPoly qz = MultiPoly::variable(work, "q") * z + MultiPoly::variable(work, "xi3");
    MultiPoly h(work);
    auto coeffs = g.coefficients_in(qi);
    for (int k = 0; k <= N; ++k)
        if (!coeffs[k].is_zero())
            h += coeffs[k] * qz.pow(k) * z.pow(N - k);
    return f * h;
}

/// Leaves: xi3, leading and constant z-coefficients of W, and disc_z W.
inline Variety hadamard_locus_5var(const MultiPoly& Pf, const MultiPoly& Qg)
{
    if (Pf.vars().contains("p") && !is_simple(UniOverPoly(Pf, "p")))
        throw std::invalid_argument("Pf is not simple in p");
    if (Qg.vars().contains("q") && !is_simple(UniOverPoly(Qg, "q")))
        throw std::invalid_argument("Qg is not simple in q");
    VariableSet out = hadamard_5var_vars();
    MultiPoly W = hadamard_W(Pf, Qg);
    std::vector<Leaf> leaves{{"xi3", MultiPoly::variable(out, "xi3")}};
    for (auto& l : detail::root_degeneration_leaves(W, W.vars().index_of("z"), out))
        leaves.push_back(std::move(l));
    Variety v(out);
    v.add_union(leaves);
    return v;
}

/// Q = z^N P(.., z_i + z, .., z_j + xi/z, ..) with N = deg_{z_j} P, over
/// (xi, vars of P...), and its degeneration leaves in z.
inline Variety odot_locus(const MultiPoly& P, std::string_view zi, std::string_view zj, const std::string& xi = "xi")
{
    const VariableSet& in = P.vars();
    std::size_t i = in.index_of(zi), j = in.index_of(zj);
    if (i == j)
        throw std::invalid_argument("odot locus needs two different variables");
    if (P.is_zero())
        throw std::invalid_argument("zero polynomial");
    std::string z = "__z";
    if (in.contains(xi))
        throw std::invalid_argument("variable '" + xi + "' already in use");
    std::vector<std::string> names{xi};
    names.insert(names.end(), in.names().begin(), in.names().end());
    VariableSet out(names);
    VariableSet work = out.appended(z);
    MultiPoly p = P.embed(work);
    MultiPoly zv = MultiPoly::variable(work, z), xv = MultiPoly::variable(work, xi);
    std::size_t wi = work.index_of(zi), wj = work.index_of(zj);
    p = p.substitute(wi, MultiPoly::variable(work, zi) + zv);
    int N = p.degree(wj);
    MultiPoly rep = MultiPoly::variable(work, zj) * zv + xv;
    MultiPoly Q(work);
    auto coeffs = p.coefficients_in(wj);
    for (int k = 0; k <= N; ++k)
        if (!coeffs[k].is_zero())
            Q += coeffs[k] * rep.pow(k) * zv.pow(N - k);
    Variety v(out);
    v.add_union(detail::root_degeneration_leaves(Q, work.index_of(z), out));
    return v;
}

} // namespace dq
