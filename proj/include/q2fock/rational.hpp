#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace q2fock {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps the representation reduced and
// the denominator positive.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Accepts "p", "-p", "p/q" with an optional sign on the numerator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

// Deformation parameter must satisfy q in [-1,1]; positivity of the deformed
// inner product fails outside.
inline void require_valid_q(const Rational& q) {
    if (q < -1 || q > 1)
        throw std::invalid_argument("q must lie in [-1,1], got " + to_string(q));
}

inline std::optional<Int> exact_isqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Exact square root of a non-negative rational, when one exists.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    auto num = exact_isqrt(boost::multiprecision::numerator(r));
    auto den = exact_isqrt(boost::multiprecision::denominator(r));
    if (num && den) return Rational(*num, *den);
    return std::nullopt;
}

}  // namespace q2fock
