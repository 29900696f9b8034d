#include "capax/set_function.hpp"

#include <cmath>

namespace capax {

namespace {

void check_dense_shape(const GroundSet& ground, size_t count, const char* context) {
    ground.require_dense(context);
    if (count != (size_t{1} << ground.size()))
        throw ParseError(std::string(context) + ": expected " +
                         std::to_string(std::uint64_t{1} << ground.size()) + " values, got " +
                         std::to_string(count));
}

}  // namespace

SetFunction::SetFunction(GroundSet ground_set, std::vector<double> vals)
    : ground(std::move(ground_set)), values(std::move(vals)) {
    check_dense_shape(ground, values.size(), "SetFunction");
}

MobiusRepr::MobiusRepr(GroundSet ground_set, std::vector<double> cs)
    : ground(std::move(ground_set)), coeffs(std::move(cs)) {
    check_dense_shape(ground, coeffs.size(), "MobiusRepr");
}

InteractionRepr::InteractionRepr(GroundSet ground_set, std::vector<double> cs)
    : ground(std::move(ground_set)), coeffs(std::move(cs)) {
    check_dense_shape(ground, coeffs.size(), "InteractionRepr");
}

Capacity validate_capacity(SetFunction sf, double tol) {
    const int n = sf.n();
    const Mask full = sf.ground.full_mask();
    if (std::abs(sf[0]) > tol)
        throw BoundaryViolation("mu(empty) = " + std::to_string(sf[0]) + ", expected 0", 0);
    if (std::abs(sf[full] - 1.0) > tol)
        throw BoundaryViolation("mu(X) = " + std::to_string(sf[full]) + ", expected 1", full);

    // Covering pairs (A, A+{x}) are enough: any violated inclusion contains a
    // violated covering step.
    const size_t size = size_t{1} << n;
    for (int i = 0; i < n; ++i) {
        const Mask bit = element_mask(i);
        for (size_t mask = 0; mask < size; ++mask) {
            if (mask & bit) continue;
            const Mask a = static_cast<Mask>(mask);
            if (sf[a] > sf[a | bit] + tol)
                throw MonotonicityViolation(
                    "mu" + sf.ground.format_subset(a) + " = " + std::to_string(sf[a]) + " > mu" +
                        sf.ground.format_subset(a | bit) + " = " + std::to_string(sf[a | bit]),
                    a, a | bit);
        }
    }
    return Capacity(std::move(sf));
}

Capacity dual(const Capacity& mu, double tol) {
    const Mask full = mu.ground().full_mask();
    std::vector<double> values(mu.values().size());
    for (size_t a = 0; a < values.size(); ++a)
        values[a] = 1.0 - mu[full & ~static_cast<Mask>(a)];
    return validate_capacity(SetFunction(mu.ground(), std::move(values)), tol);
}

MobiusValidity is_valid_mobius(const MobiusRepr& m, double tol) {
    MobiusValidity result;
    const int n = m.n();
    const size_t size = size_t{1} << n;

    if (std::abs(m[0]) > tol) {
        result.valid = false;
        result.reason = "m(empty) = " + std::to_string(m[0]) + ", expected 0";
        return result;
    }
    double total = 0;
    for (size_t a = 0; a < size; ++a) total += m.coeffs[a];
    if (std::abs(total - 1.0) > tol) {
        result.valid = false;
        result.reason = "sum of coefficients = " + std::to_string(total) + ", expected 1";
        result.witness_set = m.ground.full_mask();
        return result;
    }

    // Condition (ii) per element: T_i(A) = sum_{x_i in B subset A} m(B) is the
    // zeta transform of m restricted to sets containing x_i.
    for (int i = 0; i < n; ++i) {
        const Mask bit = element_mask(i);
        std::vector<double> t(m.coeffs);
        for (size_t a = 0; a < size; ++a)
            if (!(a & bit)) t[a] = 0;
        kernel::zeta_inplace(t, n);
        for (size_t a = 0; a < size; ++a) {
            if (!(a & bit)) continue;
            if (t[a] < -tol) {
                result.valid = false;
                result.reason = "negative coalition mass for " + m.ground.label(i) + " within " +
                                m.ground.format_subset(static_cast<Mask>(a));
                result.witness_set = static_cast<Mask>(a);
                result.witness_element = i;
                return result;
            }
        }
    }
    return result;
}

bool is_belief(const Capacity& mu, double tol) {
    const MobiusRepr m = mobius_from_capacity(mu.set_function());
    for (double c : m.coeffs)
        if (c < -tol) return false;
    return true;
}

MobiusRepr mobius_from_capacity(const SetFunction& mu) {
    if (std::abs(mu[0]) > kDefaultTolerance)
        throw BoundaryViolation("mobius_from_capacity requires value 0 at the empty set", 0);
    std::vector<double> m(mu.values);
    kernel::mobius_inplace(m, mu.n());
    return MobiusRepr(mu.ground, std::move(m));
}

SetFunction capacity_from_mobius(const MobiusRepr& m) {
    if (std::abs(m[0]) > kDefaultTolerance)
        throw BoundaryViolation("capacity_from_mobius requires coefficient 0 at the empty set", 0);
    std::vector<double> mu(m.coeffs);
    kernel::zeta_inplace(mu, m.n());
    return SetFunction(m.ground, std::move(mu));
}

InteractionRepr interaction_from_mobius(const MobiusRepr& m) {
    return InteractionRepr(m.ground, kernel::interaction_from_mobius(m.coeffs, m.n()));
}

MobiusRepr mobius_from_interaction(const InteractionRepr& interaction) {
    BernoulliTable table(interaction.n());
    return MobiusRepr(interaction.ground,
                      kernel::mobius_from_interaction(interaction.coeffs, interaction.n(), table));
}

InteractionRepr interaction_from_capacity(const Capacity& mu) {
    return InteractionRepr(mu.ground(), kernel::interaction_from_capacity(mu.values(), mu.n()));
}

bool is_null_set(const Capacity& mu, Mask a, double tol) {
    const Mask comp = mu.ground().full_mask() & ~a;
    bool ok = true;
    for_each_submask(comp, [&](Mask b) {
        if (std::abs(mu[a | b] - mu[b]) > tol) ok = false;
    });
    return ok;
}

bool are_indifferent(const Capacity& mu, Element i, Element j, double tol) {
    if (i == j) throw ParseError("are_indifferent needs two distinct elements");
    const Mask bi = element_mask(i), bj = element_mask(j);
    const Mask rest = mu.ground().full_mask() & ~(bi | bj);
    bool ok = true;
    for_each_submask(rest, [&](Mask a) {
        if (std::abs(mu[a | bi] - mu[a | bj]) > tol) ok = false;
    });
    return ok;
}

bool is_set_of_indifference(const Capacity& mu, Mask a, double tol, IndifferenceWitness* witness) {
    // mu must be constant on {B u C : B subset A, |B| = k} for every C outside
    // A and every k.  Group submasks of A by cardinality and compare each
    // against the first representative (equality is transitive).
    const int asize = mask_card(a);
    std::vector<std::vector<Mask>> by_card(static_cast<size_t>(asize) + 1);
    for_each_submask(a, [&](Mask b) { by_card[static_cast<size_t>(mask_card(b))].push_back(b); });

    const Mask outside = mu.ground().full_mask() & ~a;
    bool ok = true;
    for_each_submask(outside, [&](Mask c) {
        if (!ok) return;
        for (int k = 1; k < asize && ok; ++k) {
            const auto& group = by_card[static_cast<size_t>(k)];
            const double ref = mu[group.front() | c];
            for (Mask b : group) {
                if (std::abs(mu[b | c] - ref) > tol) {
                    ok = false;
                    if (witness) {
                        witness->first = group.front() | c;
                        witness->second = b | c;
                    }
                    break;
                }
            }
        }
    });
    return ok;
}

bool is_set_of_indifference_altdef(const Capacity& mu, Mask a, double tol) {
    const int asize = mask_card(a);
    std::vector<std::vector<Mask>> by_card(static_cast<size_t>(asize) + 1);
    for_each_submask(a, [&](Mask b) { by_card[static_cast<size_t>(mask_card(b))].push_back(b); });

    const Mask full = mu.ground().full_mask();
    for (int k = 1; k < asize; ++k) {
        const auto& group = by_card[static_cast<size_t>(k)];
        for (size_t p = 0; p < group.size(); ++p) {
            for (size_t q = p + 1; q < group.size(); ++q) {
                const Mask b1 = group[p], b2 = group[q];
                const Mask rest = full & ~(b1 | b2);
                bool ok = true;
                for_each_submask(rest, [&](Mask c) {
                    if (std::abs(mu[b1 | c] - mu[b2 | c]) > tol) ok = false;
                });
                if (!ok) return false;
            }
        }
    }
    return true;
}

Capacity lower_envelope(const GroundSet& ground, const IndifferencePartition& partition,
                        const std::vector<double>& probs, double tol) {
    if (probs.size() != static_cast<size_t>(partition.p()))
        throw InvalidProbabilities("expected one probability per block");
    double total = 0;
    for (double p : probs) {
        if (p < -tol) throw InvalidProbabilities("negative block probability");
        total += p;
    }
    if (std::abs(total - 1.0) > tol)
        throw InvalidProbabilities("block probabilities sum to " + std::to_string(total));

    ground.require_dense("lower_envelope");
    const size_t size = size_t{1} << ground.size();
    std::vector<double> values(size, 0.0);
    for (size_t a = 0; a < size; ++a) {
        double acc = 0;
        for (int i = 0; i < partition.p(); ++i)
            if ((partition.block(i) & static_cast<Mask>(a)) == partition.block(i))
                acc += probs[static_cast<size_t>(i)];
        values[a] = acc;
    }
    return validate_capacity(SetFunction(ground, std::move(values)), tol);
}

bool is_interadditive(const Capacity& mu, const IndifferencePartition& partition, double tol) {
    const size_t size = mu.values().size();
    for (size_t a = 0; a < size; ++a) {
        double sum = 0;
        for (Mask b : partition.blocks()) sum += mu[static_cast<Mask>(a) & b];
        if (std::abs(mu[static_cast<Mask>(a)] - sum) > tol) return false;
    }
    return true;
}

}  // namespace capax
