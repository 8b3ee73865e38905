#pragma once

#include "dq/rational.hpp"
#include "dq/variables.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dq {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order: total degree first, then the first differing
/// exponent in variable-set order decides.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const
    {
        int da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return a < b;
    }
};

using TermMap = std::map<Exponents, Rational, GradedLexLess>;

/// Point assignment for some of the variables, by name.
using Bindings = std::vector<std::pair<std::string, Rational>>;

inline void add_to(TermMap& terms, const Exponents& e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
}

/// Exact sparse multivariate polynomial over Q with named variables.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(VariableSet vars) : vars_(std::move(vars)) {}
    MultiPoly(VariableSet vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms))
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.size() != vars_.size())
                throw std::invalid_argument("exponent vector length does not match the variable set");
            if (std::any_of(it->first.begin(), it->first.end(), [](int x) { return x < 0; }))
                throw std::invalid_argument("negative exponent in a polynomial term");
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
        }
    }

    static MultiPoly constant(VariableSet vars, const Rational& c)
    {
        MultiPoly p(std::move(vars));
        add_to(p.terms_, Exponents(p.vars_.size(), 0), c);
        return p;
    }

    static MultiPoly variable(VariableSet vars, std::string_view name, int power = 1)
    {
        MultiPoly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e[p.vars_.index_of(name)] = power;
        p.terms_.emplace(std::move(e), Rational(1));
        return p;
    }

    static MultiPoly monomial(VariableSet vars, Exponents e, const Rational& c)
    {
        TermMap t;
        add_to(t, e, c);
        return MultiPoly(std::move(vars), std::move(t));
    }

    const VariableSet& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && dq::total_degree(terms_.begin()->first) == 0);
    }

    Rational constant_term() const
    {
        auto it = terms_.find(Exponents(vars_.size(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// -1 for the zero polynomial.
    int total_degree() const { return terms_.empty() ? -1 : dq::total_degree(terms_.rbegin()->first); }

    int degree(std::size_t var) const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[var]);
        return d;
    }
    int degree(std::string_view var) const { return degree(vars_.index_of(var)); }

    bool depends_on(std::size_t var) const
    {
        return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] != 0; });
    }

    /// Leading term in graded-lex order; requires a nonzero polynomial.
    const std::pair<const Exponents, Rational>& leading() const
    {
        if (terms_.empty())
            throw std::domain_error("leading term of the zero polynomial");
        return *terms_.rbegin();
    }

    void add_term(const Exponents& e, const Rational& c)
    {
        if (e.size() != vars_.size())
            throw std::invalid_argument("exponent vector length does not match the variable set");
        add_to(terms_, e, c);
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        require_same(o);
        for (const auto& [e, c] : o.terms_)
            add_to(terms_, e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o)
    {
        require_same(o);
        for (const auto& [e, c] : o.terms_)
            add_to(terms_, e, -c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& s)
    {
        if (s == 0)
            terms_.clear();
        else
            for (auto& [e, c] : terms_)
                c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
    MultiPoly operator-() const { return *this * Rational(-1); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        a.require_same(b);
        MultiPoly out(a.vars_);
        Exponents e(a.vars_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                add_to(out.terms_, e, ca * cb);
            }
        return out;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(int n) const
    {
        if (n < 0)
            throw std::domain_error("negative power of a polynomial");
        MultiPoly result = constant(vars_, 1), base = *this;
        while (n > 0) {
            if (n & 1)
                result *= base;
            n >>= 1;
            if (n > 0)
                base *= base;
        }
        return result;
    }

    MultiPoly derivative(std::size_t var, int order = 1) const
    {
        if (order < 0)
            throw std::domain_error("negative derivative order");
        MultiPoly out(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] < order)
                continue;
            Exponents f = e;
            f[var] -= order;
            add_to(out.terms_, f, c * falling_factorial(e[var], order));
        }
        return out;
    }
    MultiPoly derivative(std::string_view var, int order = 1) const { return derivative(vars_.index_of(var), order); }

    /// Antiderivative in `var` vanishing at var = 0.
    MultiPoly integrate(std::size_t var) const
    {
        MultiPoly out(vars_);
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            f[var] += 1;
            add_to(out.terms_, f, c / (e[var] + 1));
        }
        return out;
    }
    MultiPoly integrate(std::string_view var) const { return integrate(vars_.index_of(var)); }

    /// Replaces `var` by the polynomial `value` (same variable set).
    MultiPoly substitute(std::size_t var, const MultiPoly& value) const
    {
        require_same(value);
        // Group by power of var so each power of `value` is formed once.
        std::map<int, MultiPoly> by_power;
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            int k = f[var];
            f[var] = 0;
            auto [it, _] = by_power.try_emplace(k, vars_);
            it->second.add_term(f, c);
        }
        MultiPoly out(vars_);
        MultiPoly power = constant(vars_, 1);
        int at = 0;
        for (const auto& [k, coeff] : by_power) {
            while (at < k) {
                power *= value;
                ++at;
            }
            out += coeff * power;
        }
        return out;
    }
    MultiPoly substitute(std::string_view var, const MultiPoly& value) const
    {
        return substitute(vars_.index_of(var), value);
    }

    /// Partial evaluation; the variable set is kept (bound variables no longer occur).
    MultiPoly evaluate(const Bindings& bindings) const
    {
        std::vector<std::pair<std::size_t, Rational>> idx;
        for (const auto& [name, v] : bindings)
            idx.emplace_back(vars_.index_of(name), v);
        MultiPoly out(vars_);
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            Rational coeff = c;
            for (const auto& [i, v] : idx) {
                coeff *= dq::pow(v, f[i]);
                f[i] = 0;
            }
            add_to(out.terms_, f, coeff);
        }
        return out;
    }

    /// Full evaluation at a point given in variable-set order.
    Rational evaluate_at(const std::vector<Rational>& point) const
    {
        if (point.size() != vars_.size())
            throw std::invalid_argument("point dimension does not match the variable set");
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0)
                    t *= dq::pow(point[i], e[i]);
            sum += t;
        }
        return sum;
    }

    std::complex<double> evaluate_numeric(const std::vector<std::complex<double>>& point) const
    {
        if (point.size() != vars_.size())
            throw std::invalid_argument("point dimension does not match the variable set");
        std::complex<double> sum = 0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = to_double(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k)
                    t *= point[i];
            sum += t;
        }
        return sum;
    }

    /// Sum of |coefficient| * |point|^e, the natural scale for "numerically zero".
    double magnitude_at(const std::vector<std::complex<double>>& point) const
    {
        double sum = 0;
        for (const auto& [e, c] : terms_) {
            double t = std::fabs(to_double(c));
            for (std::size_t i = 0; i < e.size(); ++i)
                t *= std::pow(std::abs(point[i]), e[i]);
            sum += t;
        }
        return sum;
    }

    /// Re-expresses the polynomial over `target`, mapping each variable by
    /// name (after `rename`). Every occurring variable must exist in target.
    MultiPoly embed(const VariableSet& target, const std::vector<std::pair<std::string, std::string>>& rename = {}) const
    {
        std::vector<std::optional<std::size_t>> map(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            std::string name = vars_.name(i);
            for (const auto& [from, to] : rename)
                if (from == name) {
                    name = to;
                    break;
                }
            map[i] = target.find(name);
        }
        MultiPoly out(target);
        for (const auto& [e, c] : terms_) {
            Exponents f(target.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!map[i])
                    throw std::invalid_argument("variable '" + vars_.name(i) + "' has no counterpart in the target set");
                f[*map[i]] += e[i];
            }
            add_to(out.terms_, f, c);
        }
        return out;
    }

    /// Coefficients b_0..b_M of the polynomial viewed as univariate in `var`;
    /// each b_i lives in the same variable set and does not involve `var`.
    std::vector<MultiPoly> coefficients_in(std::size_t var) const
    {
        std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(degree(var), 0) + 1), MultiPoly(vars_));
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            int k = f[var];
            f[var] = 0;
            out[static_cast<std::size_t>(k)].add_term(f, c);
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    void require_same(const MultiPoly& o) const
    {
        if (!(vars_ == o.vars_))
            throw std::invalid_argument("variable-set mismatch");
    }

private:
    VariableSet vars_;
    TermMap terms_;
};

/// Canonical text: terms in descending graded-lex order; inside a term the
/// distinguished variable comes first and the others follow in natural name
/// order.
inline std::string format_terms(const VariableSet& vars, const TermMap& terms)
{
    if (terms.empty())
        return "0";
    std::vector<std::size_t> order(vars.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin() + 1, order.end(),
              [&](std::size_t a, std::size_t b) { return natural_less(vars.name(a), vars.name(b)); });
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [e, c] = *it;
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        bool has_vars = dq::total_degree(e) > 0;
        bool wrote = false;
        if (!has_vars || mag != 1) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i : order) {
            if (e[i] == 0)
                continue;
            if (wrote)
                os << '*';
            os << vars.name(i);
            if (e[i] != 1)
                os << '^' << e[i];
            wrote = true;
        }
    }
    return os.str();
}

inline std::string to_string(const MultiPoly& p) { return format_terms(p.vars(), p.terms()); }
inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << to_string(p); }

} // namespace dq
