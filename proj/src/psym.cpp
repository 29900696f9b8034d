#include "capax/psym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace capax {

std::string repr_name(Repr r) {
    switch (r) {
        case Repr::capacity: return "capacity";
        case Repr::mobius: return "mobius";
        case Repr::interaction: return "interaction";
    }
    return "?";
}

Repr repr_from_name(const std::string& name) {
    if (name == "capacity") return Repr::capacity;
    if (name == "mobius") return Repr::mobius;
    if (name == "interaction") return Repr::interaction;
    throw ParseError("unknown representation '" + name + "'");
}

PSymmetricCapacity::PSymmetricCapacity(GroundSet ground, IndifferencePartition partition, Repr tag,
                                       std::vector<double> matrix)
    : ground_(std::move(ground)), partition_(std::move(partition)), tag_(tag), matrix_(std::move(matrix)) {
    int covered = 0;
    for (int s : partition_.block_sizes()) covered += s;
    if (covered != ground_.size())
        throw ParseError("partition does not match the ground set size");
    if (matrix_.size() != partition_.matrix_size())
        throw ParseError("matrix has " + std::to_string(matrix_.size()) + " entries, expected " +
                         std::to_string(partition_.matrix_size()));
}

double PSymmetricCapacity::block_measure(int i) const {
    Composition c(static_cast<size_t>(p()), 0);
    c[static_cast<size_t>(i)] = partition_.block_size(i);
    return at(c);
}

void PSymmetricCapacity::check_capacity_invariants(double tol) const {
    if (tag_ != Repr::capacity)
        throw InvariantViolation("expected a capacity-tagged measure, got " + repr_name(tag_));
    if (std::abs(matrix_.front()) > tol)
        throw InvariantViolation("matrix entry at the origin must be 0");
    if (std::abs(matrix_.back() - 1.0) > tol)
        throw InvariantViolation("matrix entry at the top composition must be 1");
    const std::vector<int> extents = partition_.extents();
    const std::vector<int>& sizes = partition_.block_sizes();
    bool ok = true;
    Composition bad;
    int bad_axis = -1;
    for_each_composition(sizes, [&](const Composition& c) {
        if (!ok) return;
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            Composition prev(c);
            --prev[k];
            if (at(prev) > at(c) + tol) {
                ok = false;
                bad = c;
                bad_axis = static_cast<int>(k);
                return;
            }
        }
    });
    if (!ok) {
        std::string s = "matrix not monotone along axis " + std::to_string(bad_axis) + " at (";
        for (size_t k = 0; k < bad.size(); ++k) s += (k ? "," : "") + std::to_string(bad[k]);
        throw InvariantViolation(s + ")");
    }
}

std::uint64_t storage_count(const IndifferencePartition& partition) {
    return partition.matrix_size() - 2;
}

namespace kernel {

std::uint64_t composition_count(const Composition& c, const std::vector<int>& sizes) {
    std::uint64_t ways = 1;
    for (size_t k = 0; k < c.size(); ++k) ways *= binomial(sizes[k], c[k]);
    return ways;
}

}  // namespace kernel

IndifferencePartition coarsest_partition(const Capacity& mu, double tol) {
    const int n = mu.n();
    // Pairwise indifference is an equivalence relation (two single-element
    // swaps through the shared element), so its classes are the blocks.
    std::vector<int> cls(static_cast<size_t>(n));
    std::iota(cls.begin(), cls.end(), 0);
    for (int i = 0; i < n; ++i) {
        if (cls[static_cast<size_t>(i)] != i) continue;
        for (int j = i + 1; j < n; ++j) {
            if (cls[static_cast<size_t>(j)] != j) continue;
            if (are_indifferent(mu, i, j, tol)) cls[static_cast<size_t>(j)] = i;
        }
    }
    std::vector<Mask> blocks;
    for (int i = 0; i < n; ++i) {
        if (cls[static_cast<size_t>(i)] != i) continue;
        Mask b = 0;
        for (int j = 0; j < n; ++j)
            if (cls[static_cast<size_t>(j)] == i) b |= element_mask(j);
        blocks.push_back(b);
    }
    IndifferencePartition partition(mu.ground(), std::move(blocks));

    // The equivalence-class construction is provably coarsest, but the claim
    // rests on transitivity; re-check each block directly and treat a failure
    // as an internal error, not bad input.
    for (Mask b : partition.blocks()) {
        IndifferenceWitness w;
        if (!is_set_of_indifference(mu, b, tol, &w))
            throw std::logic_error("coarsest_partition: block " + mu.ground().format_subset(b) +
                                   " failed the set-of-indifference post-check between " +
                                   mu.ground().format_subset(w.first) + " and " +
                                   mu.ground().format_subset(w.second));
    }
    return partition;
}

PSymmetricCapacity compress(const Capacity& mu, const IndifferencePartition& partition, double tol) {
    for (Mask b : partition.blocks()) {
        IndifferenceWitness w;
        if (!is_set_of_indifference(mu, b, tol, &w))
            throw NotIndifferent("block " + mu.ground().format_subset(b) +
                                     " is not a set of indifference: mu" +
                                     mu.ground().format_subset(w.first) + " != mu" +
                                     mu.ground().format_subset(w.second),
                                 b, w.first, w.second);
    }

    const std::vector<int> extents = partition.extents();
    std::vector<double> matrix(partition.matrix_size(), 0.0);
    std::vector<Mask> first_seen(matrix.size(), 0);
    std::vector<bool> seen(matrix.size(), false);
    const size_t size = mu.values().size();
    for (size_t s = 0; s < size; ++s) {
        const Mask sm = static_cast<Mask>(s);
        const size_t idx =
            static_cast<size_t>(composition_index(composition_of(sm, partition), extents));
        if (!seen[idx]) {
            seen[idx] = true;
            first_seen[idx] = sm;
            matrix[idx] = mu[sm];
        } else if (std::abs(matrix[idx] - mu[sm]) > tol) {
            throw NotIndifferent("subsets " + mu.ground().format_subset(first_seen[idx]) + " and " +
                                     mu.ground().format_subset(sm) +
                                     " share a composition but differ in measure",
                                 0, first_seen[idx], sm);
        }
    }
    return PSymmetricCapacity(mu.ground(), partition, Repr::capacity, std::move(matrix));
}

Capacity expand(const PSymmetricCapacity& psym, double tol) {
    psym.check_capacity_invariants(tol);
    psym.ground().require_dense("expand");
    const std::vector<int> extents = psym.extents();
    const size_t size = size_t{1} << psym.ground().size();
    std::vector<double> values(size);
    for (size_t s = 0; s < size; ++s)
        values[s] = psym.matrix()[static_cast<size_t>(
            composition_index(composition_of(static_cast<Mask>(s), psym.partition()), extents))];
    return validate_capacity(SetFunction(psym.ground(), std::move(values)), tol);
}

namespace {

void require_tag(const PSymmetricCapacity& psym, Repr expected, const char* op) {
    if (psym.tag() != expected)
        throw InvariantViolation(std::string(op) + " expects a " + repr_name(expected) +
                                 "-tagged measure, got " + repr_name(psym.tag()));
}

PSymmetricCapacity with_matrix(const PSymmetricCapacity& src, Repr tag, std::vector<double> m) {
    return PSymmetricCapacity(src.ground(), src.partition(), tag, std::move(m));
}

}  // namespace

PSymmetricCapacity psym_mobius(const PSymmetricCapacity& psym) {
    require_tag(psym, Repr::capacity, "psym_mobius");
    return with_matrix(psym, Repr::mobius, kernel::psym_mobius(psym.extents(), psym.matrix()));
}

PSymmetricCapacity psym_capacity_from_mobius(const PSymmetricCapacity& psym_m) {
    require_tag(psym_m, Repr::mobius, "psym_capacity_from_mobius");
    return with_matrix(psym_m, Repr::capacity,
                       kernel::psym_capacity_from_mobius(psym_m.extents(), psym_m.matrix()));
}

PSymmetricCapacity psym_interaction_from_mobius(const PSymmetricCapacity& psym_m) {
    require_tag(psym_m, Repr::mobius, "psym_interaction_from_mobius");
    return with_matrix(psym_m, Repr::interaction,
                       kernel::psym_interaction_from_mobius(psym_m.extents(), psym_m.matrix()));
}

PSymmetricCapacity psym_mobius_from_interaction(const PSymmetricCapacity& psym_interaction) {
    require_tag(psym_interaction, Repr::interaction, "psym_mobius_from_interaction");
    BernoulliTable table(psym_interaction.ground().size());
    return with_matrix(
        psym_interaction, Repr::mobius,
        kernel::psym_mobius_from_interaction(psym_interaction.extents(), psym_interaction.matrix(), table));
}

PSymmetricCapacity psym_interaction_from_capacity(const PSymmetricCapacity& psym) {
    require_tag(psym, Repr::capacity, "psym_interaction_from_capacity");
    return with_matrix(psym, Repr::interaction,
                       kernel::psym_interaction_from_capacity(psym.extents(), psym.matrix()));
}

PSymmetricCapacity psym_capacity_from_interaction(const PSymmetricCapacity& psym_interaction) {
    require_tag(psym_interaction, Repr::interaction, "psym_capacity_from_interaction");
    BernoulliTable table(psym_interaction.ground().size());
    return with_matrix(
        psym_interaction, Repr::capacity,
        kernel::psym_capacity_from_interaction(psym_interaction.extents(), psym_interaction.matrix(), table));
}

PSymmetricCapacity dual_psym(const PSymmetricCapacity& psym) {
    require_tag(psym, Repr::capacity, "dual_psym");
    return with_matrix(psym, Repr::capacity, kernel::psym_dual(psym.extents(), psym.matrix()));
}

PSymmetricCapacity psym_convert(const PSymmetricCapacity& psym, Repr target) {
    if (psym.tag() == target) return psym;
    switch (psym.tag()) {
        case Repr::capacity:
            return target == Repr::mobius ? psym_mobius(psym) : psym_interaction_from_capacity(psym);
        case Repr::mobius:
            return target == Repr::capacity ? psym_capacity_from_mobius(psym)
                                            : psym_interaction_from_mobius(psym);
        case Repr::interaction:
            return target == Repr::capacity ? psym_capacity_from_interaction(psym)
                                            : psym_mobius_from_interaction(psym);
    }
    throw std::logic_error("psym_convert: unreachable");
}

}  // namespace capax
