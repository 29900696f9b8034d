#ifndef CAPAX_COMBINAT_HPP
#define CAPAX_COMBINAT_HPP

#include <cstdint>
#include <vector>

#include "capax/rational.hpp"

namespace capax {

/// C(n, k) for 0 <= n <= 64; 0 outside the triangle.
std::uint64_t binomial(int n, int k);

/// n! / (sizes_1! * ... * sizes_p!) where n = sum of sizes.
/// Throws GuardExceeded if the value does not fit 64 bits.
std::uint64_t multinomial(const std::vector<int>& sizes);

/// Bernoulli numbers B_0, B_1, ... as exact rationals, via
/// B_0 = 1,  B_k = -sum_{l<k} B_l / (k-l+1) * C(k,l).
/// The table grows lazily; values are cached for the process lifetime.
class BernoulliTable {
public:
    explicit BernoulliTable(int kmax = 0);

    const Rational& at(int k);
    double at_double(int k);

private:
    void extend(int kmax);
    std::vector<Rational> values_;
};

/// Convenience accessor over a shared table.
Rational bernoulli(int k);

}  // namespace capax

#endif
