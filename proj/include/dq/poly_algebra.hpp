#pragma once

#include "dq/multipoly.hpp"

#include <bit>
#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dq {

/// A polynomial viewed as univariate in one of its variables, with
/// coefficients b_0..b_M that do not involve that variable.
class UniOverPoly {
public:
    UniOverPoly(const MultiPoly& p, std::size_t var) : vars_(p.vars()), var_(var), coeffs_(p.coefficients_in(var))
    {
        trim();
    }
    UniOverPoly(const MultiPoly& p, std::string_view var) : UniOverPoly(p, p.vars().index_of(var)) {}
    UniOverPoly(VariableSet vars, std::size_t var, std::vector<MultiPoly> coeffs)
        : vars_(std::move(vars)), var_(var), coeffs_(std::move(coeffs))
    {
        for (const auto& c : coeffs_)
            if (c.depends_on(var_))
                throw std::invalid_argument("coefficient involves the main variable");
        trim();
    }

    const VariableSet& vars() const { return vars_; }
    std::size_t var() const { return var_; }
    const std::string& var_name() const { return vars_.name(var_); }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for zero.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const MultiPoly& leading() const
    {
        if (coeffs_.empty())
            throw std::domain_error("zero polynomial has no leading coefficient");
        return coeffs_.back();
    }
    MultiPoly coeff(int i) const
    {
        return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : MultiPoly(vars_);
    }

    MultiPoly to_poly() const
    {
        MultiPoly out(vars_);
        MultiPoly x = MultiPoly::variable(vars_, vars_.name(var_));
        MultiPoly power = MultiPoly::constant(vars_, 1);
        for (const auto& c : coeffs_) {
            out += c * power;
            power *= x;
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    VariableSet vars_;
    std::size_t var_;
    std::vector<MultiPoly> coeffs_;
};

/// a / b when b divides a exactly over Q; throws otherwise.
inline MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b)
{
    a.require_same(b);
    if (b.is_zero())
        throw std::domain_error("division by the zero polynomial");
    const auto& [lb, cb] = b.leading();
    TermMap rem = a.terms(), quot;
    Exponents e(lb.size()), f(lb.size());
    while (!rem.empty()) {
        auto last = std::prev(rem.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = last->first[i] - lb[i];
            if (e[i] < 0)
                throw std::domain_error("polynomial division is not exact");
        }
        Rational k = last->second / cb;
        quot.emplace(e, k);
        for (const auto& [eb, c] : b.terms()) {
            for (std::size_t i = 0; i < f.size(); ++i)
                f[i] = eb[i] + e[i];
            add_to(rem, f, -k * c);
        }
    }
    return MultiPoly(a.vars(), std::move(quot));
}

/// Scales p to coprime integer coefficients with a positive leading
/// (graded-lex largest) coefficient; returns the scale s with p = s * result.
inline std::pair<Rational, MultiPoly> normalize_unit(const MultiPoly& p)
{
    if (p.is_zero())
        return {Rational(1), p};
    Integer num = 0, den = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational scale(num, den);
    scale.canonicalize();
    if (p.leading().second < 0)
        scale = -scale;
    return {scale, p * Rational(1 / scale)};
}

namespace detail {

/// Highest-index variable occurring in either polynomial.
inline std::optional<std::size_t> main_variable(const MultiPoly& a, const MultiPoly& b)
{
    for (std::size_t v = a.vars().size(); v-- > 0;)
        if (a.depends_on(v) || b.depends_on(v))
            return v;
    return std::nullopt;
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b);

inline MultiPoly content_in(const MultiPoly& p, std::size_t v)
{
    MultiPoly g(p.vars());
    for (const auto& c : p.coefficients_in(v)) {
        if (c.is_zero())
            continue;
        g = gcd_impl(g, c);
        if (g.is_constant())
            break;
    }
    return g;
}

/// lc(b)^(deg a - deg b + 1) a mod b, in v.
inline MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t v)
{
    UniOverPoly ub(b, v);
    int db = ub.degree();
    if (db < 0)
        throw std::domain_error("pseudo-remainder by zero");
    const MultiPoly& lc = ub.leading();
    MultiPoly x = MultiPoly::variable(a.vars(), a.vars().name(v));
    MultiPoly r = a;
    int da = r.degree(v);
    int steps = std::max(da - db + 1, 0);
    while (!r.is_zero() && r.degree(v) >= db) {
        UniOverPoly ur(r, v);
        int d = ur.degree();
        r = r * lc - ur.leading() * x.pow(d - db) * b;
        --steps;
    }
    for (; steps > 0; --steps)
        r *= lc;
    return r;
}

inline MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b)
{
    if (a.is_zero())
        return normalize_unit(b).second;
    if (b.is_zero())
        return normalize_unit(a).second;
    auto mv = main_variable(a, b);
    if (!mv)
        return MultiPoly::constant(a.vars(), 1);
    std::size_t v = *mv;
    if (!a.depends_on(v))
        return gcd_impl(a, content_in(b, v));
    if (!b.depends_on(v))
        return gcd_impl(content_in(a, v), b);
    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly pa = exact_divide(a, ca), pb = exact_divide(b, cb);
    if (pa.degree(v) < pb.degree(v))
        std::swap(pa, pb);
    while (!pb.is_zero() && pb.depends_on(v)) {
        MultiPoly r = pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        pb = r.is_zero() ? r : exact_divide(r, content_in(r, v));
    }
    MultiPoly g = pb.is_zero() ? exact_divide(pa, content_in(pa, v)) : MultiPoly::constant(a.vars(), 1);
    return normalize_unit(g * gcd_impl(ca, cb)).second;
}

} // namespace detail

/// Multivariate gcd over Q, normalized by normalize_unit; gcd(0, 0) = 0.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b)
{
    a.require_same(b);
    return detail::gcd_impl(a, b);
}

struct ContentPrimitive {
    MultiPoly content;
    UniOverPoly primitive;
};

/// P = content * primitive, with the primitive part normalized by normalize_unit.
inline ContentPrimitive content_primitive(const UniOverPoly& p)
{
    if (p.is_zero())
        throw std::domain_error("content of the zero polynomial");
    MultiPoly whole = p.to_poly();
    MultiPoly g = detail::content_in(whole, p.var());
    auto [scale, prim] = normalize_unit(exact_divide(whole, g));
    return {g * scale, UniOverPoly(prim, p.var())};
}

/// gcd in F[var], F the fraction field of the other variables: returned
/// denominator-cleared and primitive in var.
inline UniOverPoly gcd_over_fraction_field(const UniOverPoly& p, const UniOverPoly& q)
{
    if (p.var() != q.var())
        throw std::invalid_argument("different main variables");
    if (p.is_zero() && q.is_zero())
        throw std::domain_error("gcd of two zero polynomials");
    MultiPoly g = gcd(p.to_poly(), q.to_poly());
    return content_primitive(UniOverPoly(g, p.var())).primitive;
}

inline UniOverPoly derivative(const UniOverPoly& p) { return UniOverPoly(p.to_poly().derivative(p.var()), p.var()); }

inline bool is_simple(const UniOverPoly& p)
{
    if (p.is_zero())
        return false;
    if (p.degree() == 0)
        return true;
    return gcd_over_fraction_field(p, derivative(p)).degree() == 0;
}

/// Square-free in var with the same zero set: content(P) * pp(P) / gcd(pp, pp').
inline UniOverPoly simple_decompose(const UniOverPoly& p)
{
    if (p.is_zero())
        throw std::domain_error("simple decomposition of the zero polynomial");
    auto [content, prim] = content_primitive(p);
    if (prim.degree() == 0)
        return p;
    UniOverPoly g = gcd_over_fraction_field(prim, derivative(prim));
    MultiPoly s = content * exact_divide(prim.to_poly(), g.to_poly());
    return UniOverPoly(s, p.var());
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
inline MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, const VariableSet& vars)
{
    std::size_t n = m.size();
    if (n == 0)
        return MultiPoly::constant(vars, 1);
    bool negate = false;
    MultiPoly prev = MultiPoly::constant(vars, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero())
                ++r;
            if (r == n)
                return MultiPoly(vars);
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = MultiPoly(vars);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

/// Sylvester matrix in var: deg(Q) rows of P coefficients (leading first),
/// then deg(P) rows of Q coefficients.
inline std::vector<std::vector<MultiPoly>> sylvester_matrix(const UniOverPoly& p, const UniOverPoly& q)
{
    int m = p.degree(), n = q.degree();
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MultiPoly>> rows(size, std::vector<MultiPoly>(size, MultiPoly(p.vars())));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            rows[r][r + i] = p.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            rows[n + r][r + i] = q.coeff(n - i);
    return rows;
}

/// Determinant by Laplace expansion along the rows, memoized over column
/// subsets; division-free, suited to small sparse matrices.
inline MultiPoly minor_expansion_determinant(const std::vector<std::vector<MultiPoly>>& m, const VariableSet& vars)
{
    std::size_t n = m.size();
    if (n > 20)
        throw std::invalid_argument("matrix too large for minor expansion");
    std::vector<std::optional<MultiPoly>> minors(std::size_t{1} << n);
    minors[0] = MultiPoly::constant(vars, 1);
    for (std::uint32_t set = 1; set < (std::uint32_t{1} << n); ++set) {
        int k = std::popcount(set);
        const auto& row = m[static_cast<std::size_t>(k - 1)];
        MultiPoly acc(vars);
        int pos = 0;
        // Column j is the pos-th element of the set; sign (-1)^(k-1-pos) from
        // expanding along the last row of the leading k x k block.
        for (std::size_t j = 0; j < n; ++j) {
            if (!(set >> j & 1u))
                continue;
            const auto& sub = minors[set & ~(std::uint32_t{1} << j)];
            if (!row[j].is_zero() && sub && !sub->is_zero()) {
                MultiPoly t = row[j] * *sub;
                if ((k - 1 - pos) % 2)
                    acc -= t;
                else
                    acc += t;
            }
            ++pos;
        }
        minors[set] = std::move(acc);
    }
    return *minors.back();
}

inline MultiPoly sylvester_resultant(const UniOverPoly& p, const UniOverPoly& q)
{
    if (p.var() != q.var() || !(p.vars() == q.vars()))
        throw std::invalid_argument("resultant of polynomials over different variables");
    if (p.is_zero() || q.is_zero())
        throw std::domain_error("resultant with a zero polynomial");
    if (p.degree() < 1 && q.degree() < 1)
        throw std::domain_error("resultant needs positive degree in at least one argument");
    auto matrix = sylvester_matrix(p, q);
    if (matrix.size() <= 14)
        return minor_expansion_determinant(matrix, p.vars());
    return bareiss_determinant(std::move(matrix), p.vars());
}

inline MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var)
{
    return sylvester_resultant(UniOverPoly(p, var), UniOverPoly(q, var));
}

/// Res(P, dP/dvar); vanishes where P has a repeated root in var (or where the
/// leading coefficient drops).
inline MultiPoly discriminant_locus(const UniOverPoly& p)
{
    if (p.degree() < 1)
        throw std::domain_error("discriminant needs positive degree");
    return sylvester_resultant(p, derivative(p));
}

/// var -> var + z with z a fresh variable appended.
inline MultiPoly shift_transform(const MultiPoly& p, std::string_view var, const std::string& z)
{
    if (p.vars().contains(z))
        throw std::invalid_argument("variable '" + z + "' already in use");
    VariableSet vars = p.vars().appended(z);
    MultiPoly lifted = p.embed(vars);
    std::size_t v = vars.index_of(var);
    return lifted.substitute(v, MultiPoly::variable(vars, var) + MultiPoly::variable(vars, z));
}

/// z^M P(xi/z), M = deg_var P; var is renamed to xi and z appended.
inline MultiPoly reciprocal_transform(const MultiPoly& p, std::string_view var, const std::string& xi,
                                      const std::string& z)
{
    std::string v(var);
    if ((xi != v && p.vars().contains(xi)) || p.vars().contains(z) || xi == z)
        throw std::invalid_argument("variable name collision");
    auto names = p.vars().names();
    std::size_t idx = p.vars().index_of(var);
    names[idx] = xi;
    names.push_back(z);
    VariableSet vars(names);
    int M = p.degree(idx);
    TermMap out;
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        f.push_back(M - e[idx]);
        add_to(out, f, c);
    }
    return MultiPoly(vars, std::move(out));
}

} // namespace dq
