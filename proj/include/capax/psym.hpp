#ifndef CAPAX_PSYM_HPP
#define CAPAX_PSYM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "capax/combinat.hpp"
#include "capax/partition.hpp"
#include "capax/set_function.hpp"

namespace capax {

enum class Repr { capacity, mobius, interaction };

std::string repr_name(Repr r);
Repr repr_from_name(const std::string& name);

/// A p-symmetric measure stored as a p-dimensional matrix over composition
/// vectors, flattened row-major with the last block fastest.  The tag says
/// which representation (measure, Mobius, interaction) the entries carry.
/// Entry M[c_1,...,c_p] is the value on any subset with that composition.
class PSymmetricCapacity {
public:
    PSymmetricCapacity(GroundSet ground, IndifferencePartition partition, Repr tag,
                       std::vector<double> matrix);

    const GroundSet& ground() const { return ground_; }
    const IndifferencePartition& partition() const { return partition_; }
    Repr tag() const { return tag_; }
    const std::vector<double>& matrix() const { return matrix_; }
    std::vector<int> extents() const { return partition_.extents(); }
    int p() const { return partition_.p(); }

    double at(const Composition& c) const {
        return matrix_[static_cast<size_t>(composition_index(c, partition_.extents()))];
    }

    /// Value on the full block A_i.
    double block_measure(int i) const;

    /// Capacity-tag invariants: endpoints 0 and 1 and monotone along every
    /// coordinate axis.  Throws InvariantViolation.
    void check_capacity_invariants(double tol = kDefaultTolerance) const;

private:
    GroundSet ground_;
    IndifferencePartition partition_;
    Repr tag_;
    std::vector<double> matrix_;
};

/// Coefficients needed to pin down a p-symmetric measure:
/// (|A_1|+1) x ... x (|A_p|+1) - 2.
std::uint64_t storage_count(const IndifferencePartition& partition);

/// Equivalence classes of pairwise indifference, canonically ordered.  Each
/// class is verified to be a set of indifference; a verification failure
/// means the pairwise relation was not transitive, which the theory rules
/// out, so it is reported as a logic error rather than a user error.
IndifferencePartition coarsest_partition(const Capacity& mu, double tol = kDefaultTolerance);

/// Projects a capacity onto the compressed matrix over `partition`.  Every
/// block must be a set of indifference (finer-than-coarsest partitions are
/// fine); all representatives of each composition are checked to agree.
PSymmetricCapacity compress(const Capacity& mu, const IndifferencePartition& partition,
                            double tol = kDefaultTolerance);

/// mu(S) = M[composition_of(S)].  Requires the capacity tag; validates the
/// result.
Capacity expand(const PSymmetricCapacity& psym, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Compressed-coordinate transforms.  a = block sizes, b/c/d composition
// vectors; the kernels are generic so the rational backend can run them.

namespace kernel {

std::uint64_t composition_count(const Composition& c, const std::vector<int>& sizes);

/// m(b) = sum_{i <= b} (-1)^{|b|-|i|} prod C(b_k, i_k) mu(i).
template <class T>
std::vector<T> psym_mobius(const std::vector<int>& extents, const std::vector<T>& mu) {
    std::vector<int> bounds(extents);
    for (int& x : bounds) --x;
    std::vector<T> out(mu.size(), T(0));
    for_each_composition(bounds, [&](const Composition& b) {
        int bsum = 0;
        for (int x : b) bsum += x;
        T acc(0);
        for_each_composition(b, [&](const Composition& i) {
            int isum = 0;
            std::uint64_t ways = 1;
            for (size_t k = 0; k < b.size(); ++k) {
                isum += i[k];
                ways *= binomial(b[k], i[k]);
            }
            T term = mu[static_cast<size_t>(composition_index(i, extents))] * T(ways);
            if ((bsum - isum) & 1)
                acc -= term;
            else
                acc += term;
        });
        out[static_cast<size_t>(composition_index(b, extents))] = acc;
    });
    return out;
}

/// mu(b) = sum_{c <= b} prod C(b_k, c_k) m(c).
template <class T>
std::vector<T> psym_capacity_from_mobius(const std::vector<int>& extents, const std::vector<T>& m) {
    std::vector<int> bounds(extents);
    for (int& x : bounds) --x;
    std::vector<T> out(m.size(), T(0));
    for_each_composition(bounds, [&](const Composition& b) {
        T acc(0);
        for_each_composition(b, [&](const Composition& c) {
            std::uint64_t ways = 1;
            for (size_t k = 0; k < b.size(); ++k) ways *= binomial(b[k], c[k]);
            acc += m[static_cast<size_t>(composition_index(c, extents))] * T(ways);
        });
        out[static_cast<size_t>(composition_index(b, extents))] = acc;
    });
    return out;
}

/// I(b) = sum_{c >= b} 1/(|c|-|b|+1) prod C(a_k - b_k, c_k - b_k) m(c).
template <class T>
std::vector<T> psym_interaction_from_mobius(const std::vector<int>& extents,
                                            const std::vector<T>& m) {
    std::vector<int> sizes(extents);
    for (int& x : sizes) --x;
    std::vector<T> out(m.size(), T(0));
    for_each_composition(sizes, [&](const Composition& b) {
        int bsum = 0;
        for (int x : b) bsum += x;
        std::vector<int> slack(sizes);
        for (size_t k = 0; k < slack.size(); ++k) slack[k] -= b[k];
        T acc(0);
        for_each_composition(slack, [&](const Composition& d) {
            // c = b + d
            Composition c(b);
            int dsum = 0;
            std::uint64_t ways = 1;
            for (size_t k = 0; k < c.size(); ++k) {
                c[k] += d[k];
                dsum += d[k];
                ways *= binomial(sizes[k] - b[k], d[k]);
            }
            T term = m[static_cast<size_t>(composition_index(c, extents))] * T(ways);
            acc += term * InteractionWeights<T>::inverse_card(dsum);
        });
        out[static_cast<size_t>(composition_index(b, extents))] = acc;
    });
    return out;
}

/// m(b) = sum_{c <= a-b} prod C(a_k - b_k, c_k) B_{|c|} I(b + c).
template <class T>
std::vector<T> psym_mobius_from_interaction(const std::vector<int>& extents,
                                            const std::vector<T>& interaction,
                                            BernoulliTable& bernoulli_table) {
    std::vector<int> sizes(extents);
    for (int& x : sizes) --x;
    int n = 0;
    for (int x : sizes) n += x;
    std::vector<T> coeff(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        if constexpr (std::is_same_v<T, Rational>)
            coeff[static_cast<size_t>(k)] = bernoulli_table.at(k);
        else
            coeff[static_cast<size_t>(k)] = bernoulli_table.at_double(k);
    }
    std::vector<T> out(interaction.size(), T(0));
    for_each_composition(sizes, [&](const Composition& b) {
        std::vector<int> slack(sizes);
        for (size_t k = 0; k < slack.size(); ++k) slack[k] -= b[k];
        T acc(0);
        for_each_composition(slack, [&](const Composition& c) {
            Composition bc(b);
            int csum = 0;
            std::uint64_t ways = 1;
            for (size_t k = 0; k < bc.size(); ++k) {
                bc[k] += c[k];
                csum += c[k];
                ways *= binomial(slack[k], c[k]);
            }
            acc += interaction[static_cast<size_t>(composition_index(bc, extents))] * T(ways) *
                   coeff[static_cast<size_t>(csum)];
        });
        out[static_cast<size_t>(composition_index(b, extents))] = acc;
    });
    return out;
}

/// The composed double sum expressing I directly from mu:
/// I(b) = sum_{d <= a} sum_{c >= max(b,d)} 1/(|c|-|b|+1) (-1)^{|c|-|d|}
///        prod C(c_k, d_k) prod C(a_k - b_k, c_k - b_k) mu(d).
template <class T>
std::vector<T> psym_interaction_from_capacity(const std::vector<int>& extents,
                                              const std::vector<T>& mu) {
    std::vector<int> sizes(extents);
    for (int& x : sizes) --x;
    const size_t p = sizes.size();
    std::vector<T> out(mu.size(), T(0));
    for_each_composition(sizes, [&](const Composition& b) {
        int bsum = 0;
        for (int x : b) bsum += x;
        T acc(0);
        for_each_composition(sizes, [&](const Composition& d) {
            int dsum = 0;
            for (int x : d) dsum += x;
            const T& mud = mu[static_cast<size_t>(composition_index(d, extents))];
            // lower corner of the c-range
            Composition lo(p);
            for (size_t k = 0; k < p; ++k) lo[k] = std::max(b[k], d[k]);
            std::vector<int> span(p);
            for (size_t k = 0; k < p; ++k) span[k] = sizes[k] - lo[k];
            T inner(0);
            for_each_composition(span, [&](const Composition& off) {
                Composition c(lo);
                int csum = 0;
                std::uint64_t ways = 1;
                for (size_t k = 0; k < p; ++k) {
                    c[k] += off[k];
                    csum += c[k];
                    ways *= binomial(c[k], d[k]);
                    ways *= binomial(sizes[k] - b[k], c[k] - b[k]);
                }
                T term = T(ways) * InteractionWeights<T>::inverse_card(csum - bsum);
                if ((csum - dsum) & 1)
                    inner -= term;
                else
                    inner += term;
            });
            acc += mud * inner;
        });
        out[static_cast<size_t>(composition_index(b, extents))] = acc;
    });
    return out;
}

/// mu(b) = sum_{c <= b} prod C(b_k, c_k)
///         sum_{d <= a-c} prod C(a_k - c_k, d_k) B_{|d|} I(c + d).
template <class T>
std::vector<T> psym_capacity_from_interaction(const std::vector<int>& extents,
                                              const std::vector<T>& interaction,
                                              BernoulliTable& bernoulli_table) {
    const std::vector<T> m = psym_mobius_from_interaction(extents, interaction, bernoulli_table);
    // The binomial-weighted subset sum over c is exactly the compressed zeta.
    return psym_capacity_from_mobius(extents, m);
}

/// Dual in compressed coordinates: out(i) = 1 - in(a - i).
template <class T>
std::vector<T> psym_dual(const std::vector<int>& extents, const std::vector<T>& mu) {
    std::vector<int> sizes(extents);
    for (int& x : sizes) --x;
    std::vector<T> out(mu.size(), T(0));
    for_each_composition(sizes, [&](const Composition& c) {
        Composition rev(sizes.size());
        for (size_t k = 0; k < rev.size(); ++k) rev[k] = sizes[k] - c[k];
        out[static_cast<size_t>(composition_index(c, extents))] =
            T(1) - mu[static_cast<size_t>(composition_index(rev, extents))];
    });
    return out;
}

}  // namespace kernel

/// Compressed Mobius transform of a capacity-tagged measure.
PSymmetricCapacity psym_mobius(const PSymmetricCapacity& psym);

/// Compressed zeta transform of a mobius-tagged measure.
PSymmetricCapacity psym_capacity_from_mobius(const PSymmetricCapacity& psym_m);

PSymmetricCapacity psym_interaction_from_mobius(const PSymmetricCapacity& psym_m);

PSymmetricCapacity psym_mobius_from_interaction(const PSymmetricCapacity& psym_interaction);

/// Direct double-sum route; agrees with composing the two steps.
PSymmetricCapacity psym_interaction_from_capacity(const PSymmetricCapacity& psym);

PSymmetricCapacity psym_capacity_from_interaction(const PSymmetricCapacity& psym_interaction);

/// Dual measure; a p-symmetric measure w.r.t. the same partition.
PSymmetricCapacity dual_psym(const PSymmetricCapacity& psym);

/// Convert a psym measure to an arbitrary target representation.
PSymmetricCapacity psym_convert(const PSymmetricCapacity& psym, Repr target);

}  // namespace capax

#endif
