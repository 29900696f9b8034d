#include "capax/random.hpp"

#include <algorithm>
#include <numeric>

namespace capax {

Capacity random_capacity(const GroundSet& ground, Rng& rng) {
    ground.require_dense("random_capacity");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = ground.size();
    const size_t size = size_t{1} << n;

    // Monotone by construction: each set exceeds the largest of its covered
    // subsets by a random increment, then everything is scaled to mu(X) = 1.
    std::vector<double> values(size, 0.0);
    for (int card = 1; card <= n; ++card) {
        for (size_t s = 0; s < size; ++s) {
            const Mask sm = static_cast<Mask>(s);
            if (mask_card(sm) != card) continue;
            double floor_value = 0;
            for_each_element(sm, [&](Element e) {
                floor_value = std::max(floor_value, values[static_cast<size_t>(sm ^ element_mask(e))]);
            });
            values[s] = floor_value + unit(rng);
        }
    }
    const double top = values[size - 1];
    for (size_t s = 1; s < size; ++s) values[s] /= top;
    values[size - 1] = 1.0;
    return validate_capacity(SetFunction(ground, std::move(values)));
}

PSymmetricCapacity random_psym_capacity(const GroundSet& ground,
                                        const IndifferencePartition& partition, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<int>& sizes = partition.block_sizes();
    const std::vector<int> extents = partition.extents();
    std::vector<double> matrix(partition.matrix_size(), 0.0);

    // Same monotone fill, by composition level.
    int n = 0;
    for (int s : sizes) n += s;
    for (int level = 1; level <= n; ++level) {
        for_each_composition(sizes, [&](const Composition& c) {
            int total = 0;
            for (int x : c) total += x;
            if (total != level) return;
            double floor_value = 0;
            for (size_t k = 0; k < c.size(); ++k) {
                if (c[k] == 0) continue;
                Composition prev(c);
                --prev[k];
                floor_value = std::max(
                    floor_value, matrix[static_cast<size_t>(composition_index(prev, extents))]);
            }
            matrix[static_cast<size_t>(composition_index(c, extents))] = floor_value + unit(rng);
        });
    }
    const double top = matrix.back();
    for (size_t i = 1; i < matrix.size(); ++i) matrix[i] /= top;
    matrix.back() = 1.0;
    return PSymmetricCapacity(ground, partition, Repr::capacity, std::move(matrix));
}

PSymmetricCapacity random_belief_psym(const GroundSet& ground,
                                      const IndifferencePartition& partition, Rng& rng,
                                      bool within_blocks_only) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<int>& sizes = partition.block_sizes();
    const std::vector<int> extents = partition.extents();
    std::vector<double> mass(partition.matrix_size(), 0.0);

    // Nonnegative Mobius mass per composition class; the normalizer weighs
    // each class by the number of subsets it represents.
    double weighted_total = 0;
    for_each_composition(sizes, [&](const Composition& c) {
        int total = 0, touched = 0;
        for (int x : c) {
            total += x;
            if (x > 0) ++touched;
        }
        if (total == 0) return;
        if (within_blocks_only && touched >= 2) return;
        const double m = unit(rng);
        mass[static_cast<size_t>(composition_index(c, extents))] = m;
        weighted_total += m * static_cast<double>(kernel::composition_count(c, sizes));
    });
    for (double& m : mass) m /= weighted_total;

    PSymmetricCapacity mobius(ground, partition, Repr::mobius, std::move(mass));
    return psym_capacity_from_mobius(mobius);
}

IndifferencePartition random_partition(const GroundSet& ground, int p, Rng& rng) {
    const int n = ground.size();
    if (p < 1 || p > n) throw ParseError("random_partition: need 1 <= p <= n");
    std::vector<Element> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    // First p elements seed the blocks; the rest land uniformly.
    std::vector<Mask> blocks(static_cast<size_t>(p), 0);
    for (int i = 0; i < p; ++i) blocks[static_cast<size_t>(i)] |= element_mask(order[static_cast<size_t>(i)]);
    std::uniform_int_distribution<int> pick(0, p - 1);
    for (int i = p; i < n; ++i)
        blocks[static_cast<size_t>(pick(rng))] |= element_mask(order[static_cast<size_t>(i)]);
    return IndifferencePartition(ground, std::move(blocks));
}

ScoreVector random_scores(int n, Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(static_cast<size_t>(n));
    for (double& v : values) v = dist(rng);
    return ScoreVector(std::move(values));
}

}  // namespace capax
