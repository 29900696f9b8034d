#ifndef CAPAX_SET_FUNCTION_HPP
#define CAPAX_SET_FUNCTION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "capax/combinat.hpp"
#include "capax/errors.hpp"
#include "capax/ground_set.hpp"
#include "capax/partition.hpp"
#include "capax/rational.hpp"

namespace capax {

/// Default absolute tolerance for equality and monotonicity comparisons.
/// The underlying theory assumes exact reals; measured data needs slack.
inline constexpr double kDefaultTolerance = 1e-9;

/// A set function on 2^X with value 0 on the empty set.  No monotonicity is
/// required: this type also carries mu* and other derived non-normalized
/// measures.
struct SetFunction {
    SetFunction(GroundSet ground_set, std::vector<double> vals);

    GroundSet ground;
    std::vector<double> values;

    double operator[](Mask m) const { return values[static_cast<size_t>(m)]; }
    int n() const { return ground.size(); }
};

/// A normalized monotone set function (fuzzy measure).  Constructed only via
/// validate_capacity, so holding one certifies the invariants.
class Capacity {
public:
    const SetFunction& set_function() const { return sf_; }
    const GroundSet& ground() const { return sf_.ground; }
    const std::vector<double>& values() const { return sf_.values; }
    double operator[](Mask m) const { return sf_[m]; }
    int n() const { return sf_.n(); }

private:
    friend Capacity validate_capacity(SetFunction, double);
    explicit Capacity(SetFunction sf) : sf_(std::move(sf)) {}
    SetFunction sf_;
};

/// Mobius transform coefficients m(A), indexed by mask.
struct MobiusRepr {
    MobiusRepr(GroundSet ground_set, std::vector<double> cs);

    GroundSet ground;
    std::vector<double> coeffs;

    double operator[](Mask m) const { return coeffs[static_cast<size_t>(m)]; }
    int n() const { return ground.size(); }
};

/// Shapley interaction indices I(A), indexed by mask.
struct InteractionRepr {
    InteractionRepr(GroundSet ground_set, std::vector<double> cs);

    GroundSet ground;
    std::vector<double> coeffs;

    double operator[](Mask m) const { return coeffs[static_cast<size_t>(m)]; }
    int n() const { return ground.size(); }
};

// ---------------------------------------------------------------------------
// Validation

/// Checks the boundary conditions and monotonicity on all covering pairs
/// (A, A+{x}); throws BoundaryViolation / MonotonicityViolation with the
/// witness on failure.
Capacity validate_capacity(SetFunction values, double tol = kDefaultTolerance);

/// mu-bar(A) = 1 - mu(X\A).  An involution.
Capacity dual(const Capacity& mu, double tol = kDefaultTolerance);

struct MobiusValidity {
    bool valid = true;
    std::string reason;        // empty when valid
    Mask witness_set = 0;      // A of a failed condition (ii), or the endpoint
    Element witness_element = -1;  // x_i of a failed condition (ii)
};

/// Conditions for m to be the Mobius representation of a fuzzy measure:
/// (i) m(empty) = 0 and sum_A m(A) = 1,
/// (ii) sum_{x_i in B subset A} m(B) >= 0 for all A and all x_i in A.
MobiusValidity is_valid_mobius(const MobiusRepr& m, double tol = kDefaultTolerance);

/// True iff every Mobius coefficient is >= -tol.
bool is_belief(const Capacity& mu, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Transforms.  Kernels are generic over double / Rational; the wrappers below
// operate on the typed dense representations.

namespace kernel {

/// In-place zeta transform: out[A] = sum_{B subset A} in[B].
template <class T>
void zeta_inplace(std::vector<T>& a, int n) {
    const size_t size = size_t{1} << n;
    for (int i = 0; i < n; ++i) {
        const size_t bit = size_t{1} << i;
        for (size_t mask = 0; mask < size; ++mask)
            if (mask & bit) a[mask] += a[mask ^ bit];
    }
}

/// In-place Mobius transform, inverse of zeta_inplace.
template <class T>
void mobius_inplace(std::vector<T>& a, int n) {
    const size_t size = size_t{1} << n;
    for (int i = 0; i < n; ++i) {
        const size_t bit = size_t{1} << i;
        for (size_t mask = 0; mask < size; ++mask)
            if (mask & bit) a[mask] -= a[mask ^ bit];
    }
}

/// Direct alternating sum m(A) = sum_{B subset A} (-1)^{|A\B|} mu(B).
/// Quadratic in the subset count; kept as the oracle for the in-place path.
template <class T>
std::vector<T> mobius_naive(const std::vector<T>& mu, int n) {
    const size_t size = size_t{1} << n;
    std::vector<T> m(size, T(0));
    for (size_t a = 0; a < size; ++a) {
        T acc(0);
        for_each_submask(static_cast<Mask>(a), [&](Mask b) {
            const int sign_card = mask_card(static_cast<Mask>(a) ^ b);
            if (sign_card & 1)
                acc -= mu[static_cast<size_t>(b)];
            else
                acc += mu[static_cast<size_t>(b)];
        });
        m[a] = acc;
    }
    return m;
}

/// Direct subset sum mu(A) = sum_{B subset A} m(B), the zeta oracle.
template <class T>
std::vector<T> zeta_naive(const std::vector<T>& m, int n) {
    const size_t size = size_t{1} << n;
    std::vector<T> mu(size, T(0));
    for (size_t a = 0; a < size; ++a) {
        T acc(0);
        for_each_submask(static_cast<Mask>(a), [&](Mask b) { acc += m[static_cast<size_t>(b)]; });
        mu[a] = acc;
    }
    return mu;
}

template <class T>
struct InteractionWeights {
    // I(A) = sum_b coeff[b] * sum_{B subset X\A, |B| = b} m(A u B):
    // per-cardinality bucket sums combined with the 1/(b+1) weights.
    static T inverse_card(int b) { return T(1) / T(b + 1); }
};

template <>
struct InteractionWeights<Rational> {
    static Rational inverse_card(int b) { return Rational(1, b + 1); }
};

/// I(A) = sum_{B subset X\A} m(A u B) / (|B|+1).
template <class T>
std::vector<T> interaction_from_mobius(const std::vector<T>& m, int n) {
    const size_t size = size_t{1} << n;
    const Mask full = (n == 64) ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<T> out(size, T(0));
    std::vector<T> bucket(static_cast<size_t>(n) + 1);
    for (size_t a = 0; a < size; ++a) {
        std::fill(bucket.begin(), bucket.end(), T(0));
        const Mask comp = full & ~static_cast<Mask>(a);
        for_each_submask(comp, [&](Mask b) {
            bucket[static_cast<size_t>(mask_card(b))] += m[static_cast<size_t>(a | b)];
        });
        T acc(0);
        for (int b = 0; b <= n - mask_card(static_cast<Mask>(a)); ++b)
            acc += bucket[static_cast<size_t>(b)] * InteractionWeights<T>::inverse_card(b);
        out[a] = acc;
    }
    return out;
}

/// m(A) = sum_{B subset X\A} B_{|B|} I(A u B), Bernoulli numbers exact.
template <class T>
std::vector<T> mobius_from_interaction(const std::vector<T>& interaction, int n,
                                       BernoulliTable& bernoulli_table) {
    const size_t size = size_t{1} << n;
    const Mask full = (n == 64) ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<T> coeff(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        if constexpr (std::is_same_v<T, Rational>)
            coeff[static_cast<size_t>(k)] = bernoulli_table.at(k);
        else
            coeff[static_cast<size_t>(k)] = bernoulli_table.at_double(k);
    }
    std::vector<T> out(size, T(0));
    std::vector<T> bucket(static_cast<size_t>(n) + 1);
    for (size_t a = 0; a < size; ++a) {
        std::fill(bucket.begin(), bucket.end(), T(0));
        const Mask comp = full & ~static_cast<Mask>(a);
        for_each_submask(comp, [&](Mask b) {
            bucket[static_cast<size_t>(mask_card(b))] += interaction[static_cast<size_t>(a | b)];
        });
        T acc(0);
        for (int b = 0; b <= n - mask_card(static_cast<Mask>(a)); ++b)
            acc += bucket[static_cast<size_t>(b)] * coeff[static_cast<size_t>(b)];
        out[a] = acc;
    }
    return out;
}

// Exact-arithmetic fast paths.  cpp_rational additions re-normalize through a
// gcd every time, which dominates the transforms; clearing denominators once
// and accumulating big integers is exact and an order of magnitude faster.

namespace exact {

/// Fixed-width lanes for the scaled-integer transforms, picked by a
/// worst-case bit bound: native __int128 when everything fits, a 256-bit
/// inline-storage integer next, arbitrary precision as the fallback.
using Int128 = __int128;
inline constexpr int kInt128Bits = 126;
using Int256 = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<256, 256, boost::multiprecision::signed_magnitude,
                                           boost::multiprecision::unchecked, void>>;
inline constexpr int kInt256Bits = 250;

inline BigInt common_denominator(const std::vector<Rational>& xs) {
    BigInt d = 1;
    for (const auto& x : xs) d = lcm(d, denominator(x));
    return d;
}

inline std::vector<BigInt> scaled_numerators(const std::vector<Rational>& xs, const BigInt& d) {
    std::vector<BigInt> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(numerator(x) * (d / denominator(x)));
    return out;
}

inline int bit_width(const BigInt& x) { return x == 0 ? 0 : static_cast<int>(msb(abs(x))) + 1; }

inline int max_bit_width(const std::vector<BigInt>& xs) {
    int bits = 0;
    for (const auto& x : xs) bits = std::max(bits, bit_width(x));
    return bits;
}

template <class I>
std::vector<Rational> bucket_transform_typed(const std::vector<BigInt>& num,
                                             const std::vector<BigInt>& weight_num,
                                             const BigInt& out_denom, int n) {
    std::vector<I> values;
    values.reserve(num.size());
    for (const auto& x : num) values.push_back(static_cast<I>(x));
    std::vector<I> weights;
    weights.reserve(weight_num.size());
    for (const auto& x : weight_num) weights.push_back(static_cast<I>(x));

    const size_t size = num.size();
    const Mask full = static_cast<Mask>(size - 1);
    std::vector<Rational> out(size);
    std::vector<I> bucket(static_cast<size_t>(n) + 1);
    for (size_t a = 0; a < size; ++a) {
        std::fill(bucket.begin(), bucket.end(), I(0));
        const Mask comp = full & ~static_cast<Mask>(a);
        for_each_submask(comp, [&](Mask b) {
            bucket[static_cast<size_t>(mask_card(b))] += values[static_cast<size_t>(a | b)];
        });
        I acc(0);
        for (int b = 0; b <= n - mask_card(static_cast<Mask>(a)); ++b)
            acc += bucket[static_cast<size_t>(b)] * weights[static_cast<size_t>(b)];
        out[a] = Rational(BigInt(acc), out_denom);
    }
    return out;
}

/// out[A] = sum_b weights[b] * sum_{B subset X\A, |B| = b} values[A u B],
/// computed over a common denominator.
inline std::vector<Rational> complement_bucket_transform(const std::vector<Rational>& values, int n,
                                                         const std::vector<Rational>& weights) {
    const BigInt d = common_denominator(values);
    const std::vector<BigInt> num = scaled_numerators(values, d);

    BigInt weight_denom = 1;
    for (const auto& w : weights) weight_denom = lcm(weight_denom, denominator(w));
    std::vector<BigInt> weight_num;
    weight_num.reserve(weights.size());
    for (const auto& w : weights)
        weight_num.push_back(numerator(w) * (weight_denom / denominator(w)));

    const BigInt out_denom = d * weight_denom;
    // |bucket_b| <= 2^n max|num|, |acc| <= (n+1) max|W| max|bucket|
    const int bound = max_bit_width(num) + n + max_bit_width(weight_num) +
                      static_cast<int>(std::bit_width(static_cast<unsigned>(n) + 1)) + 2;
    if (bound <= kInt128Bits)
        return bucket_transform_typed<Int128>(num, weight_num, out_denom, n);
    if (bound <= kInt256Bits)
        return bucket_transform_typed<Int256>(num, weight_num, out_denom, n);
    return bucket_transform_typed<BigInt>(num, weight_num, out_denom, n);
}

template <class I, bool Add>
void lattice_pass_typed(std::vector<BigInt>& num, int n) {
    std::vector<I> values;
    values.reserve(num.size());
    for (const auto& x : num) values.push_back(static_cast<I>(x));
    const size_t size = num.size();
    for (int i = 0; i < n; ++i) {
        const size_t bit = size_t{1} << i;
        for (size_t mask = 0; mask < size; ++mask) {
            if (!(mask & bit)) continue;
            if constexpr (Add)
                values[mask] += values[mask ^ bit];
            else
                values[mask] -= values[mask ^ bit];
        }
    }
    for (size_t mask = 0; mask < size; ++mask) num[mask] = BigInt(values[mask]);
}

template <bool Add>
void lattice_pass(std::vector<Rational>& a, int n) {
    const BigInt d = common_denominator(a);
    std::vector<BigInt> num = scaled_numerators(a, d);
    // every pass at most doubles the magnitude
    const int bound = max_bit_width(num) + n + 2;
    if (bound <= kInt128Bits)
        lattice_pass_typed<Int128, Add>(num, n);
    else if (bound <= kInt256Bits)
        lattice_pass_typed<Int256, Add>(num, n);
    else
        lattice_pass_typed<BigInt, Add>(num, n);
    for (size_t mask = 0; mask < num.size(); ++mask) a[mask] = Rational(num[mask], d);
}

}  // namespace exact

/// Rational overloads of the in-place lattice transforms: integer adds over a
/// common denominator instead of per-step gcd normalization.
inline void zeta_inplace(std::vector<Rational>& a, int n) { exact::lattice_pass<true>(a, n); }

inline void mobius_inplace(std::vector<Rational>& a, int n) { exact::lattice_pass<false>(a, n); }

inline std::vector<Rational> interaction_from_mobius(const std::vector<Rational>& m, int n) {
    std::vector<Rational> weights(static_cast<size_t>(n) + 1);
    for (int b = 0; b <= n; ++b) weights[static_cast<size_t>(b)] = Rational(1, b + 1);
    return exact::complement_bucket_transform(m, n, weights);
}

inline std::vector<Rational> mobius_from_interaction(const std::vector<Rational>& interaction,
                                                     int n, BernoulliTable& bernoulli_table) {
    std::vector<Rational> weights(static_cast<size_t>(n) + 1);
    for (int b = 0; b <= n; ++b) weights[static_cast<size_t>(b)] = bernoulli_table.at(b);
    return exact::complement_bucket_transform(interaction, n, weights);
}

/// Shapley interaction straight from the measure:
/// I(A) = sum_{B subset X\A} (n-b-a)! b! / (n-a+1)! sum_{C subset A} (-1)^{a-c} mu(B u C)
/// with the weight computed as 1 / ((n-a+1) C(n-a, b)).
template <class T>
std::vector<T> interaction_from_capacity(const std::vector<T>& mu, int n) {
    const size_t size = size_t{1} << n;
    const Mask full = (n == 64) ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<T> out(size, T(0));
    for (size_t a = 0; a < size; ++a) {
        const Mask amask = static_cast<Mask>(a);
        const int ac = mask_card(amask);
        const Mask comp = full & ~amask;
        T acc(0);
        for_each_submask(comp, [&](Mask b) {
            const int bc = mask_card(b);
            T inner(0);
            for_each_submask(amask, [&](Mask c) {
                const int sign = (ac - mask_card(c)) & 1;
                if (sign)
                    inner -= mu[static_cast<size_t>(b | c)];
                else
                    inner += mu[static_cast<size_t>(b | c)];
            });
            const std::uint64_t denom = static_cast<std::uint64_t>(n - ac + 1) * binomial(n - ac, bc);
            if constexpr (std::is_same_v<T, Rational>)
                acc += inner / Rational(denom);
            else
                acc += inner / static_cast<double>(denom);
        });
        out[a] = acc;
    }
    return out;
}

}  // namespace kernel

/// m(A) = sum_{B subset A} (-1)^{|A\B|} mu(B).  Accepts any set function
/// with value 0 at the empty set.
MobiusRepr mobius_from_capacity(const SetFunction& mu);

/// Zeta transform: mu(A) = sum_{B subset A} m(B).
SetFunction capacity_from_mobius(const MobiusRepr& m);

/// I(A) = sum_{B subset X\A} m(A u B) / (|B|+1).
InteractionRepr interaction_from_mobius(const MobiusRepr& m);

/// m(A) = sum_{B subset X\A} B_{|B|} I(B u A).
MobiusRepr mobius_from_interaction(const InteractionRepr& interaction);

/// Shapley interaction via the direct double sum; singleton values are the
/// Shapley values of the game.
InteractionRepr interaction_from_capacity(const Capacity& mu);

// ---------------------------------------------------------------------------
// Structure predicates

/// mu(A u B) = mu(B) for all B subset X\A.
bool is_null_set(const Capacity& mu, Mask a, double tol = kDefaultTolerance);

/// mu(A u x_i) = mu(A u x_j) for all A subset X\{x_i,x_j}.
bool are_indifferent(const Capacity& mu, Element i, Element j, double tol = kDefaultTolerance);

struct IndifferenceWitness {
    Mask first = 0;
    Mask second = 0;
};

/// A is a set of indifference: same-cardinality subsets of A are
/// interchangeable in every coalition with C subset X\A.  On failure the
/// witness receives two subsets B1 u C, B2 u C with different values.
bool is_set_of_indifference(const Capacity& mu, Mask a, double tol = kDefaultTolerance,
                            IndifferenceWitness* witness = nullptr);

/// The alternative characterization with C subset X\(B1 u B2); agrees with
/// is_set_of_indifference (kept separate so that tests can confirm this).
bool is_set_of_indifference_altdef(const Capacity& mu, Mask a, double tol = kDefaultTolerance);

/// Lower envelope of the coherent probabilities that assign probs[i] to
/// block i: mu(A) = sum_{B_i subset A} P(B_i).  Always a belief function.
/// probs align with partition.blocks(), i.e. the canonical block order.
Capacity lower_envelope(const GroundSet& ground, const IndifferencePartition& partition,
                        const std::vector<double>& probs, double tol = kDefaultTolerance);

/// mu(A) = sum_{P in partition} mu(P intersect A) for every A.
bool is_interadditive(const Capacity& mu, const IndifferencePartition& partition,
                      double tol = kDefaultTolerance);

}  // namespace capax

#endif
