#pragma once

// Exact rational scalars. Backed by GMP's mpq_class, which keeps every value
// canonical (lowest terms, positive denominator) after each operation.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dq {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "3", "-7/2", "+5". No whitespace, no decimals.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (d.empty())
            return false;
        std::size_t i = 0;
        if (allow_sign && d[0] == '-')
            i = 1;
        if (i == d.size())
            return false;
        for (; i < d.size(); ++i)
            if (d[i] < '0' || d[i] > '9')
                return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits_ok(s, true))
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
        return Rational(Integer(s));
    }
    auto num = std::string_view(s).substr(0, slash);
    auto den = std::string_view(s).substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0)
        throw std::invalid_argument("rational literal with zero denominator");
    Rational r(Integer{std::string(num)}, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational factorial(int n)
{
    if (n < 0)
        throw std::domain_error("factorial of a negative number");
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

/// n (n-1) ... (n-k+1); zero when k > n.
inline Rational falling_factorial(int n, int k)
{
    if (k > n)
        return Rational(0);
    Integer f = 1;
    for (int i = 0; i < k; ++i)
        f *= n - i;
    return Rational(f);
}

inline Rational binomial(int n, int k)
{
    if (k < 0 || k > n)
        return Rational(0);
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

inline Rational pow(const Rational& base, int e)
{
    if (e < 0) {
        if (base == 0)
            throw std::domain_error("zero to a negative power");
        return pow(Rational(1) / base, -e);
    }
    // (a/b)^e stays in lowest terms when a/b does.
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

/// log|r| without overflowing doubles for huge numerators/denominators.
inline double log_abs(const Rational& r)
{
    if (r == 0)
        return -INFINITY;
    auto log_z = [](const mpz_t z) {
        long exp = 0;
        double mant = mpz_get_d_2exp(&exp, z);
        return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
    };
    return log_z(r.get_num_mpz_t()) - log_z(r.get_den_mpz_t());
}

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace dq
