#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwci {

// Weights, degrees and quotient orders are small; intermediate products in the
// nefness inequalities and volume formulas are not, so all rational values are
// exact arbitrary-precision fractions.
using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd_all(std::span<const Int> xs) {
    Int g = 0;
    for (Int x : xs) g = std::gcd(g, x);
    return g;
}

/// Lowest-terms "p/q" with integral values rendered without the "/q".
inline std::string rat_to_string(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

/// Parse "p/q" or "p". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

/// True iff the rational is a (non-negative or any) integer.
inline bool rat_is_integer(const Rat& r) {
    return boost::multiprecision::denominator(r) == 1;
}

/// Exact conversion to BigInt; throws if not integral.
inline BigInt rat_to_integer(const Rat& r) {
    if (!rat_is_integer(r)) throw std::domain_error("rational is not integral: " + rat_to_string(r));
    return boost::multiprecision::numerator(r);
}

}  // namespace mwci
