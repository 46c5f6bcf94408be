#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace gaugecalc {

/// Exact arbitrary-precision rational scalar. Always kept in canonical form
/// (lowest terms, positive denominator); every operation in the library is
/// exact, there is no rounding anywhere.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p", "-p", or "p/q" (q > 0 after sign normalization).
/// Throws std::invalid_argument on malformed input or zero denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) -> Integer {
        if (part.empty()) throw std::invalid_argument("malformed rational: '" + text + "'");
        std::size_t i = 0;
        if (part[0] == '+' || part[0] == '-') i = 1;
        if (i == part.size()) throw std::invalid_argument("malformed rational: '" + text + "'");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw std::invalid_argument("malformed rational: '" + text + "'");
        return Integer(part);
    };
    Integer num, den;
    if (slash == std::string::npos) {
        num = parse_int(text);
        den = 1;
    } else {
        num = parse_int(text.substr(0, slash));
        den = parse_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
        if (den < 0) { num = -num; den = -den; }
    }
    Rational r(num, den);
    // mpq construction from mpz pair canonicalizes, but be explicit: the
    // lowest-terms invariant is what makes exact equality usable as a key.
    mpq_canonicalize(r.backend().data());
    return r;
}

inline std::string to_string(const Rational& r) { return r.str(); }

/// +infinity-aware value used where a gauge or operator norm may be infinite.
using ExtendedRational = std::optional<Rational>;  // nullopt == +infinity

}  // namespace gaugecalc
