#ifndef CAPAX_RATIONAL_HPP
#define CAPAX_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace capax {

/// Exact arithmetic backend.  Construction from double is exact (every IEEE
/// double is a dyadic rational), so transform roundtrips started from float
/// data stay bit-identical.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return static_cast<double>(r); }
inline double to_double(double x) { return x; }

inline std::vector<Rational> to_rational(const std::vector<double>& xs) {
    std::vector<Rational> out;
    out.reserve(xs.size());
    for (double x : xs) out.emplace_back(x);
    return out;
}

inline std::vector<double> from_rational(const std::vector<Rational>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(to_double(x));
    return out;
}

/// cpp_rational keeps values in lowest terms, so equality is just a part-wise
/// integer comparison.  The built-in operator== renormalizes and is orders of
/// magnitude slower on large batches.
inline bool exact_equal(const Rational& a, const Rational& b) {
    return numerator(a) == numerator(b) && denominator(a) == denominator(b);
}

inline bool exact_equal(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!exact_equal(a[i], b[i])) return false;
    return true;
}

namespace detail {

// Uniform "zero test with tolerance" over both backends: rationals compare
// exactly, doubles within tol.
inline bool nearly_zero(double x, double tol) { return x <= tol && x >= -tol; }
inline bool nearly_zero(const Rational& x, double) { return x == 0; }

inline bool nearly_equal(double a, double b, double tol) { return nearly_zero(a - b, tol); }
inline bool nearly_equal(const Rational& a, const Rational& b, double) { return a == b; }

}  // namespace detail

}  // namespace capax

#endif
