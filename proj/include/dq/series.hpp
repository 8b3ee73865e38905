#pragma once

#include "dq/multipoly.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

namespace dq {

/// Thrown when an operation would have to store a coefficient outside the
/// declared window (instead of silently dropping it).
struct WindowOverflow : std::range_error {
    using std::range_error::range_error;
};

/// Finite window onto a formal series: a cap on the degree of the
/// distinguished variable and a cap on the joint degree of all the others.
struct Truncation {
    int deg_t = 0;
    int deg_xy = 0;

    Truncation() = default;
    Truncation(int t, int xy) : deg_t(t), deg_xy(xy)
    {
        if (t < 0 || xy < 0)
            throw std::invalid_argument("truncation degrees must be non-negative");
    }

    bool retains(const Exponents& e) const
    {
        if (e.empty())
            return true;
        int xy = 0;
        for (std::size_t i = 1; i < e.size(); ++i)
            xy += e[i];
        return e[0] <= deg_t && xy <= deg_xy;
    }

    static Truncation meet(const Truncation& a, const Truncation& b)
    {
        return {std::min(a.deg_t, b.deg_t), std::min(a.deg_xy, b.deg_xy)};
    }

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

inline int xy_degree(const Exponents& e)
{
    int xy = 0;
    for (std::size_t i = 1; i < e.size(); ++i)
        xy += e[i];
    return xy;
}

/// Truncated multivariate formal power series over Q.
///
/// The stored terms are the exact coefficients on the retained window. A
/// series is *complete* when no nonzero coefficient exists outside the stored
/// terms (a polynomial that fit in its window); a complete series can go
/// through degree-lowering operations without losing its window, whereas an
/// incomplete one shrinks its window to keep every retained coefficient exact.
class FormalSeries {
public:
    FormalSeries() = default;
    FormalSeries(VariableSet vars, Truncation trunc) : body_(std::move(vars)), trunc_(trunc) {}

    /// Stores the terms of `p` that fit in the window. Dropping any nonzero
    /// term makes the result incomplete.
    static FormalSeries from_poly(const MultiPoly& p, Truncation trunc, bool complete = true)
    {
        FormalSeries s(p.vars(), trunc);
        s.complete_ = complete;
        for (const auto& [e, c] : p.terms()) {
            if (trunc.retains(e))
                s.body_.add_term(e, c);
            else
                s.complete_ = false;
        }
        return s;
    }

    static FormalSeries constant(VariableSet vars, Truncation trunc, const Rational& c)
    {
        return from_poly(MultiPoly::constant(std::move(vars), c), trunc);
    }

    const VariableSet& vars() const { return body_.vars(); }
    const Truncation& trunc() const { return trunc_; }
    const TermMap& terms() const { return body_.terms(); }
    const MultiPoly& poly() const { return body_; }
    bool is_complete() const { return complete_; }
    bool is_zero() const { return body_.is_zero(); }
    Rational coefficient(const Exponents& e) const { return body_.coefficient(e); }

    /// Restricts to a smaller window. Widening is only allowed for complete series.
    FormalSeries truncated(Truncation window) const
    {
        if (!complete_ && (window.deg_t > trunc_.deg_t || window.deg_xy > trunc_.deg_xy))
            throw std::domain_error("cannot widen the window of a truncated series");
        return from_poly(body_, window, complete_);
    }

    /// Marks the stored terms as a truncation of an unknown infinite series.
    FormalSeries as_truncation() const
    {
        FormalSeries s = *this;
        s.complete_ = false;
        return s;
    }

    FormalSeries& operator+=(const FormalSeries& o) { return *this = combine(*this, o, Rational(1)); }
    FormalSeries& operator-=(const FormalSeries& o) { return *this = combine(*this, o, Rational(-1)); }
    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) { return combine(a, b, Rational(1)); }
    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return combine(a, b, Rational(-1)); }
    FormalSeries operator-() const
    {
        FormalSeries s = *this;
        s.body_ *= Rational(-1);
        return s;
    }
    friend FormalSeries operator*(const Rational& k, const FormalSeries& a)
    {
        FormalSeries s = a;
        s.body_ *= k;
        return s;
    }
    friend FormalSeries operator*(const FormalSeries& a, const Rational& k) { return k * a; }

    /// Cauchy product; products leaving the window are discarded.
    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b)
    {
        a.body_.require_same(b.body_);
        Truncation w = Truncation::meet(a.trunc_, b.trunc_);
        FormalSeries out(a.vars(), w);
        out.complete_ = a.complete_ && b.complete_;
        TermMap acc;
        Exponents e(a.vars().size());
        for (const auto& [ea, ca] : a.terms())
            for (const auto& [eb, cb] : b.terms()) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                if (w.retains(e))
                    add_to(acc, e, ca * cb);
                else
                    out.complete_ = false;
            }
        out.body_ = MultiPoly(a.vars(), std::move(acc));
        return out;
    }

    /// d^order / d var^order. Truncated series lose `order` degrees of window
    /// in the differentiated direction.
    FormalSeries derivative(std::string_view var, int order = 1) const
    {
        std::size_t v = vars().index_of(var);
        Truncation w = trunc_;
        if (!complete_) {
            (v == 0 ? w.deg_t : w.deg_xy) -= order;
            if (w.deg_t < 0 || w.deg_xy < 0)
                throw std::domain_error("derivative order exceeds the truncation window");
        }
        return from_poly(body_.derivative(v, order), w, complete_);
    }

    /// Antiderivative in `var` vanishing at var = 0, optionally evaluated at
    /// the polynomial upper limit `upper` (over the same variables). Terms that
    /// would leave the window raise WindowOverflow.
    FormalSeries integrate(std::string_view var, const std::optional<MultiPoly>& upper = std::nullopt) const
    {
        std::size_t v = vars().index_of(var);
        MultiPoly anti = body_.integrate(v);
        if (upper) {
            if (!complete_)
                throw std::domain_error("a polynomial upper limit needs a complete integrand");
            anti = anti.substitute(v, *upper);
        }
        for (const auto& [e, c] : anti.terms())
            if (!trunc_.retains(e))
                throw WindowOverflow("integration leaves the truncation window");
        FormalSeries s(vars(), trunc_);
        s.body_ = std::move(anti);
        s.complete_ = complete_;
        return s;
    }

    /// Exact substitution of rational values for non-distinguished variables.
    /// Nonzero values need a complete series (otherwise infinitely many
    /// unknown terms would contribute).
    FormalSeries evaluate(const Bindings& bindings) const
    {
        for (const auto& [name, value] : bindings) {
            if (vars().index_of(name) == 0)
                throw std::invalid_argument("cannot bind the distinguished variable '" + name + "'");
            if (!complete_ && value != 0)
                throw std::domain_error("evaluating a truncated series at a nonzero value of '" + name + "'");
        }
        return from_poly(body_.evaluate(bindings), trunc_, complete_);
    }

    /// Coefficient-wise equality on the common window.
    friend bool operator==(const FormalSeries& a, const FormalSeries& b)
    {
        if (!(a.vars() == b.vars()))
            return false;
        Truncation w = Truncation::meet(a.trunc_, b.trunc_);
        auto restricted = [&](const FormalSeries& s) {
            TermMap t;
            for (const auto& [e, c] : s.terms())
                if (w.retains(e))
                    t.emplace(e, c);
            return t;
        };
        return restricted(a) == restricted(b);
    }

private:
    static FormalSeries combine(const FormalSeries& a, const FormalSeries& b, const Rational& sign)
    {
        a.body_.require_same(b.body_);
        Truncation w = Truncation::meet(a.trunc_, b.trunc_);
        FormalSeries out = from_poly(a.body_, w, a.complete_);
        FormalSeries rhs = from_poly(b.body_, w, b.complete_);
        out.body_ += rhs.body_ * sign;
        out.complete_ = out.complete_ && rhs.complete_;
        return out;
    }

    MultiPoly body_;
    Truncation trunc_;
    bool complete_ = true;
};

inline std::string to_string(const FormalSeries& s) { return format_terms(s.vars(), s.terms()); }
inline std::ostream& operator<<(std::ostream& os, const FormalSeries& s) { return os << to_string(s); }

/// Window on which a weight-preserving bidifferential operator (star
/// products, the transition operator and their Borel images) is exact.
///
/// Those operators trade one unit of t-degree for two units of (q,p)-degree,
/// so xy + 2t is additive. Unknown coefficients of an incomplete input sit at
/// t > deg_t or xy > deg_xy, hence only contaminate outputs with t > deg_t or
/// xy + 2t > deg_xy. The returned box keeps as much t-range as possible.
inline Truncation weighted_exact_window(std::initializer_list<const FormalSeries*> inputs)
{
    std::optional<Truncation> nominal, incomplete;
    for (const FormalSeries* s : inputs) {
        nominal = nominal ? Truncation::meet(*nominal, s->trunc()) : s->trunc();
        if (!s->is_complete())
            incomplete = incomplete ? Truncation::meet(*incomplete, s->trunc()) : s->trunc();
    }
    if (!nominal)
        throw std::invalid_argument("no inputs");
    if (!incomplete)
        return *nominal;
    int d = std::min(incomplete->deg_t, incomplete->deg_xy / 2);
    int e = incomplete->deg_xy - 2 * d;
    return {std::min(nominal->deg_t, d), std::min(nominal->deg_xy, e)};
}

inline bool all_complete(std::initializer_list<const FormalSeries*> inputs)
{
    return std::all_of(inputs.begin(), inputs.end(), [](const FormalSeries* s) { return s->is_complete(); });
}

} // namespace dq
