#pragma once

#include "dq/series.hpp"

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dq {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Token {
    enum Kind { number, ident, plus, minus, star, caret, end } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                ++i;
            std::size_t j = i;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j])))
                ++j;
            if (j < s.size() && s[j] == '/') {
                ++j;
                while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j])))
                    ++j;
                if (j == s.size() || !std::isdigit(static_cast<unsigned char>(s[j])))
                    throw ParseError("expected a denominator at position " + std::to_string(j));
                std::string num(s.substr(start, i - start));
                i = j;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
                out.push_back({Token::number, num + "/" + std::string(s.substr(j, i - j)), start});
            } else {
                out.push_back({Token::number, std::string(s.substr(start, i - start)), start});
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            out.push_back({Token::ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        Token::Kind k;
        switch (c) {
        case '+': k = Token::plus; break;
        case '-': k = Token::minus; break;
        case '*': k = Token::star; break;
        case '^': k = Token::caret; break;
        default: throw ParseError(std::string("unexpected character '") + c + "' at position " + std::to_string(i));
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::end, "", s.size()});
    return out;
}

struct RawTerm {
    Rational coeff;
    std::vector<std::pair<std::string, int>> powers;
};

inline std::vector<RawTerm> parse_raw(std::string_view text)
{
    auto toks = tokenize(text);
    std::size_t k = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(toks[k].pos));
    };
    std::vector<RawTerm> terms;
    bool first = true;
    while (toks[k].kind != Token::end || first) {
        Rational sign = 1;
        if (toks[k].kind == Token::plus || toks[k].kind == Token::minus) {
            if (toks[k].kind == Token::minus)
                sign = -1;
            ++k;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        RawTerm t{sign, {}};
        bool need_factor = true;
        if (toks[k].kind == Token::number) {
            t.coeff *= parse_rational(toks[k].text);
            ++k;
            need_factor = false;
            if (toks[k].kind == Token::star)
                ++k, need_factor = true;
            else
                goto done;
        }
        while (true) {
            if (toks[k].kind != Token::ident)
                fail(need_factor ? "expected a variable" : "expected a term");
            std::string name = toks[k].text;
            ++k;
            int power = 1;
            if (toks[k].kind == Token::caret) {
                ++k;
                if (toks[k].kind != Token::number || toks[k].text.find('/') != std::string::npos)
                    fail("expected a non-negative integer exponent");
                power = std::stoi(toks[k].text);
                ++k;
            }
            t.powers.emplace_back(std::move(name), power);
            if (toks[k].kind != Token::star)
                break;
            ++k;
        }
    done:
        terms.push_back(std::move(t));
    }
    return terms;
}

} // namespace detail

/// Identifiers occurring in `text`, sorted in natural order.
inline std::vector<std::string> infer_variables(std::string_view text)
{
    std::set<std::string, decltype([](const std::string& a, const std::string& b) { return natural_less(a, b); })> names;
    for (const auto& t : detail::parse_raw(text))
        for (const auto& [name, power] : t.powers)
            names.insert(name);
    return {names.begin(), names.end()};
}

inline MultiPoly parse_poly(std::string_view text, const VariableSet& vars)
{
    TermMap terms;
    for (const auto& t : detail::parse_raw(text)) {
        Exponents e(vars.size(), 0);
        for (const auto& [name, power] : t.powers) {
            auto i = vars.find(name);
            if (!i)
                throw ParseError("unknown variable '" + name + "'");
            e[*i] += power;
        }
        add_to(terms, e, t.coeff);
    }
    return MultiPoly(vars, std::move(terms));
}

/// Parses into the window; terms outside it are dropped and the result is
/// then flagged incomplete.
inline FormalSeries parse_series(std::string_view text, const VariableSet& vars, Truncation trunc)
{
    return FormalSeries::from_poly(parse_poly(text, vars), trunc);
}

} // namespace dq
