#ifndef CAPAX_CHOQUET_HPP
#define CAPAX_CHOQUET_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "capax/psym.hpp"
#include "capax/set_function.hpp"

namespace capax {

/// Nonnegative scores f(x_i), one per element.
class ScoreVector {
public:
    explicit ScoreVector(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    double operator[](Element i) const { return values_[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(values_.size()); }

    /// Ascending permutation of element indices, ties broken by index.
    std::vector<Element> ascending_order() const;

private:
    std::vector<double> values_;
};

/// OWA weight vector: w_i in [0,1], sum 1.
class OwaWeights {
public:
    explicit OwaWeights(std::vector<double> weights, double tol = kDefaultTolerance);

    const std::vector<double>& values() const { return weights_; }
    int size() const { return static_cast<int>(weights_.size()); }

private:
    std::vector<double> weights_;
};

/// Choquet integral of f w.r.t. mu.  Both discrete forms of the definition
/// are evaluated and cross-checked before returning.
double choquet(const Capacity& mu, const ScoreVector& f, double tol = kDefaultTolerance);

/// Choquet integral via the Mobius form: sum_T m(T) min_{x in T} f(x).
/// The identity is stated on [0,1]^n; scores outside that range throw
/// ScoreOutOfRange unless allow_out_of_range is set (the identity extends by
/// positive homogeneity and shift, so the opt-out is safe for set functions
/// integrated through this route).
double choquet_mobius(const MobiusRepr& m, const ScoreVector& f, bool allow_out_of_range = false);

/// Choquet integral of a compressed measure.  Works entirely in composition
/// coordinates; never materializes the dense 2^n array.
double choquet_psym(const PSymmetricCapacity& psym, const ScoreVector& f);

/// Same integral from the compressed Mobius representation directly; use for
/// batches so the matrix is transformed once.
double choquet_psym_mobius(const PSymmetricCapacity& psym_m, const ScoreVector& f);

/// sum_i w_i f(x_(i)) over ascending-sorted scores.
double owa(const OwaWeights& w, const ScoreVector& f);

/// The symmetric capacity v with v(k) = sum_{i=n-k+1}^n w_i, as a 1-block
/// compressed measure; its Choquet integral equals OWA_w for every f.
PSymmetricCapacity owa_to_capacity(const OwaWeights& w, const GroundSet& ground);
PSymmetricCapacity owa_to_capacity(const OwaWeights& w);

/// Weights w_i = v(n-i+1) - v(n-i) of a symmetric capacity; throws
/// NotSymmetric when the coarsest partition has more than one block.
OwaWeights capacity_to_owa(const Capacity& mu, double tol = kDefaultTolerance);

/// Same extraction from a 1-block compressed capacity.
OwaWeights owa_from_symmetric(const PSymmetricCapacity& psym, double tol = kDefaultTolerance);

/// Split of the Choquet integral along the partition:
///   total = sum_i mu(A_i) * C(f, mu_{A_i})  +  residual,
/// where mu_{A_i} is the block measure normalized by mu(A_i) and the residual
/// collects the Mobius mass of subsets straddling several blocks.
struct DecompositionResult {
    std::vector<double> block_terms;  ///< mu(A_i) * integral over block i
    double residual = 0;              ///< mass not confined to a single block
    double total = 0;                 ///< equals the direct Choquet integral
    std::vector<PSymmetricCapacity> block_measures;  ///< normalized mu_{A_i}, 1-block each
    /// mu*(C) = mu(C) - sum_i mu(C intersect A_i), in compressed form
    /// (belief route only).
    std::optional<PSymmetricCapacity> residual_psym;
    /// Dense mu* when the ground set is within the dense cap (belief route).
    std::optional<SetFunction> residual_measure;
    double interaction_degree = 0;  ///< mu(X) - sum mu(A_i) (belief route)
};

/// Requires mu(A_i) > 0 for every block; the residual is computed by the
/// explicit Mobius sum over straddling subsets, never by subtraction, so the
/// total/identity agreement is a genuine cross-check.
DecompositionResult decompose(const PSymmetricCapacity& psym, const ScoreVector& f,
                              double tol = kDefaultTolerance);

/// Belief-function variant: also materializes mu* and integrates the residual
/// as the Choquet integral of that non-normalized set function (Mobius-form
/// sum, which needs no monotonicity).  Throws NotBelief.
DecompositionResult belief_decompose(const PSymmetricCapacity& psym, const ScoreVector& f,
                                     double tol = kDefaultTolerance);

/// Degree of interaction among the partition blocks for a belief measure:
/// mu(X) - mu(A_1) - ... - mu(A_p) = mu*(X), in [0,1].  Throws NotBelief.
double interaction_degree(const PSymmetricCapacity& psym, double tol = kDefaultTolerance);

/// Diagnostic variant without the belief guard.  The raw difference can be 0
/// while genuine interactions remain, so this value carries no guarantee;
/// non-normative, kept because the non-belief case is instructive.
double interaction_degree_raw(const PSymmetricCapacity& psym);

/// True iff the interaction degree vanishes.  When it does, verifies that the
/// decomposition residual is ~0 for a battery of random score vectors and
/// (within the dense cap) that the partition is interadditive; either check
/// failing is a logic error, not a user error.
bool vanishing_degree_check(const PSymmetricCapacity& psym, std::uint64_t seed = 8927,
                            int trials = 50, double tol = kDefaultTolerance);

}  // namespace capax

#endif
