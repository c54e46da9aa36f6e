#pragma once

#include <compat/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace compat {

// cpp_rational keeps values normalized (lowest terms, positive denominator).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {
    inline bool all_digits(std::string_view s)
    {
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    }
}

/// Parses "p/q", "p", "-p/q" or "+p". Decimals and exponents are rejected.
inline Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (! body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (! detail::all_digits(num) || ! detail::all_digits(den))
        throw Error(Errc::ParseError, "not an exact rational: '" + std::string(text) + "'");

    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0)
        throw Error(Errc::ParseError, "zero denominator: '" + std::string(text) + "'");
    if (negative)
        n = -n;
    return Rational(n, d);
}

inline std::string format_rational(const Rational & q)
{
    const auto & num = boost::multiprecision::numerator(q);
    const auto & den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

} // namespace compat
