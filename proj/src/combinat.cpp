#include "capax/combinat.hpp"

#include <array>
#include <mutex>

#include "capax/errors.hpp"
#include "capax/ground_set.hpp"

namespace capax {

namespace {

struct PascalTable {
    std::array<std::array<std::uint64_t, kMaxElements + 1>, kMaxElements + 1> c{};
    PascalTable() {
        for (int n = 0; n <= kMaxElements; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

const PascalTable& pascal() {
    static const PascalTable t;
    return t;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (n > kMaxElements) throw GuardExceeded("binomial: n exceeds table size");
    return pascal().c[n][k];
}

std::uint64_t multinomial(const std::vector<int>& sizes) {
    // Product of binomials over the running total; exactness checked with
    // big-integer arithmetic so overflow cannot pass silently.
    BigInt result = 1;
    int total = 0;
    for (int s : sizes) {
        if (s < 0) throw ParseError("multinomial: negative block size");
        total += s;
        BigInt num = 1, den = 1;
        for (int i = 1; i <= s; ++i) {
            num *= total - s + i;
            den *= i;
        }
        result = result * num / den;
    }
    if (result > BigInt(~std::uint64_t{0}))
        throw GuardExceeded("multinomial value does not fit in 64 bits");
    return result.convert_to<std::uint64_t>();
}

BernoulliTable::BernoulliTable(int kmax) {
    values_.push_back(Rational(1));
    extend(kmax);
}

void BernoulliTable::extend(int kmax) {
    for (int k = static_cast<int>(values_.size()); k <= kmax; ++k) {
        Rational sum = 0;
        for (int l = 0; l < k; ++l)
            sum += values_[static_cast<size_t>(l)] * Rational(BigInt(binomial(k, l)), BigInt(k - l + 1));
        values_.push_back(-sum);
    }
}

const Rational& BernoulliTable::at(int k) {
    if (k < 0) throw ParseError("bernoulli: negative index");
    extend(k);
    return values_[static_cast<size_t>(k)];
}

double BernoulliTable::at_double(int k) { return to_double(at(k)); }

Rational bernoulli(int k) {
    static BernoulliTable table(32);
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    return table.at(k);
}

}  // namespace capax
