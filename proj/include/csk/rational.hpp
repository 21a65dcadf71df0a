#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace csk {

// Exact arbitrary-precision rational. Always reduced, denominator > 0,
// canonical zero is 0/1 (all maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when an iterative numeric procedure fails to reach its tolerance.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Serialized form is "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos)
        throw validation_error("empty rational literal");
    try {
        return Rational(text.substr(first, last - first + 1));
    } catch (const std::exception&) {
        throw validation_error("bad rational literal: '" + text + "'");
    }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Every finite double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw validation_error("non-finite value has no rational form");
    return Rational(x);
}

inline Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    Integer num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Rational(num, den);
}

}  // namespace csk
