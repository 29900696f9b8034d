#include "capax/partition.hpp"

#include <algorithm>

#include "capax/combinat.hpp"
#include "capax/errors.hpp"

namespace capax {

namespace {

constexpr std::uint64_t kMatrixCap = std::uint64_t{1} << 24;

}  // namespace

IndifferencePartition::IndifferencePartition(const GroundSet& ground, std::vector<Mask> blocks)
    : blocks_(std::move(blocks)) {
    const Mask full = ground.full_mask();
    Mask seen = 0;
    for (Mask b : blocks_) {
        if (b == 0) throw ParseError("partition block must be nonempty");
        if ((b & ~full) != 0) throw ParseError("partition block exceeds the ground set");
        if ((b & seen) != 0) throw ParseError("partition blocks must be disjoint");
        seen |= b;
    }
    if (seen != full) throw ParseError("partition blocks must cover the ground set");

    std::sort(blocks_.begin(), blocks_.end(), [](Mask a, Mask b) {
        const int ca = mask_card(a), cb = mask_card(b);
        if (ca != cb) return ca < cb;
        return mask_lowest(a) < mask_lowest(b);
    });

    sizes_.reserve(blocks_.size());
    for (Mask b : blocks_) sizes_.push_back(mask_card(b));

    block_of_.assign(static_cast<size_t>(ground.size()), -1);
    for (int bi = 0; bi < p(); ++bi)
        for_each_element(blocks_[static_cast<size_t>(bi)],
                         [&](Element e) { block_of_[static_cast<size_t>(e)] = bi; });
}

std::vector<int> IndifferencePartition::extents() const {
    std::vector<int> e(sizes_);
    for (int& x : e) ++x;
    return e;
}

std::uint64_t IndifferencePartition::matrix_size() const {
    std::uint64_t total = 1;
    for (int s : sizes_) {
        total *= static_cast<std::uint64_t>(s) + 1;
        if (total > kMatrixCap)
            throw GuardExceeded("compressed matrix would exceed the 2^24 entry cap");
    }
    return total;
}

Composition composition_of(Mask subset, const IndifferencePartition& partition) {
    Composition c;
    c.reserve(static_cast<size_t>(partition.p()));
    for (Mask b : partition.blocks()) c.push_back(mask_card(subset & b));
    return c;
}

std::uint64_t composition_index(const Composition& c, const std::vector<int>& extents) {
    std::uint64_t idx = 0;
    for (size_t i = 0; i < c.size(); ++i)
        idx = idx * static_cast<std::uint64_t>(extents[i]) + static_cast<std::uint64_t>(c[i]);
    return idx;
}

std::uint64_t path_count(const IndifferencePartition& partition) {
    return multinomial(partition.block_sizes());
}

std::vector<CompositionPath> enumerate_paths(const IndifferencePartition& partition,
                                             std::uint64_t max_paths) {
    const std::uint64_t count = path_count(partition);
    if (count > max_paths)
        throw GuardExceeded("enumerate_paths: " + std::to_string(count) + " chains exceed the guard of " +
                            std::to_string(max_paths));

    const Composition& top = partition.top();
    const int p = partition.p();

    std::vector<CompositionPath> paths;
    paths.reserve(static_cast<size_t>(count));

    // Iterative depth-first walk over the composition lattice.  Each stack
    // entry is the index of the coordinate incremented at that depth.
    CompositionPath chain;
    chain.push_back(Composition(static_cast<size_t>(p), 0));
    std::vector<int> choice;  // coordinate chosen at each step so far

    auto current = [&]() -> const Composition& { return chain.back(); };

    while (true) {
        if (current() == top) {
            paths.push_back(chain);
        } else {
            // descend: first coordinate that can still grow
            int j = 0;
            while (current()[static_cast<size_t>(j)] == top[static_cast<size_t>(j)]) ++j;
            Composition next = current();
            ++next[static_cast<size_t>(j)];
            chain.push_back(std::move(next));
            choice.push_back(j);
            continue;
        }
        // backtrack to the deepest step with an untried coordinate
        while (!choice.empty()) {
            int j = choice.back();
            chain.pop_back();
            choice.pop_back();
            ++j;
            while (j < p && (current()[static_cast<size_t>(j)] == top[static_cast<size_t>(j)])) ++j;
            if (j < p) {
                Composition next = current();
                ++next[static_cast<size_t>(j)];
                chain.push_back(std::move(next));
                choice.push_back(j);
                break;
            }
        }
        if (choice.empty() && chain.size() == 1) break;
    }

    return paths;
}

}  // namespace capax
