#ifndef CAPAX_PARTITION_HPP
#define CAPAX_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "capax/ground_set.hpp"

namespace capax {

/// (c_1,...,c_p): how many elements of each block a subset contains.
using Composition = std::vector<int>;

/// Ordered disjoint nonempty blocks A_1..A_p covering the ground set.
/// Canonical order: by (size ascending, smallest member ascending), so that
/// partition equality and file round-trips are deterministic.
class IndifferencePartition {
public:
    /// Validates and canonicalizes; throws ParseError on empty/overlapping
    /// blocks or incomplete cover.
    IndifferencePartition(const GroundSet& ground, std::vector<Mask> blocks);

    int p() const { return static_cast<int>(blocks_.size()); }
    const std::vector<Mask>& blocks() const { return blocks_; }
    Mask block(int i) const { return blocks_[static_cast<size_t>(i)]; }
    int block_size(int i) const { return sizes_[static_cast<size_t>(i)]; }
    const std::vector<int>& block_sizes() const { return sizes_; }

    /// Block index of element i.
    int block_of(Element i) const { return block_of_[static_cast<size_t>(i)]; }

    /// Matrix extents (|A_1|+1, ..., |A_p|+1).
    std::vector<int> extents() const;

    /// Product of extents; throws GuardExceeded past the compressed cap 2^24.
    std::uint64_t matrix_size() const;

    const Composition& top() const { return sizes_; }

    bool operator==(const IndifferencePartition& other) const { return blocks_ == other.blocks_; }

private:
    std::vector<Mask> blocks_;
    std::vector<int> sizes_;
    std::vector<int> block_of_;
};

/// c_i = |subset intersect A_i|.
Composition composition_of(Mask subset, const IndifferencePartition& partition);

/// Flat row-major index of a composition, last block fastest.
std::uint64_t composition_index(const Composition& c, const std::vector<int>& extents);

/// Visits every composition with 0 <= c_i <= bounds[i], last coordinate
/// fastest (matching composition_index order).
template <class Fn>
void for_each_composition(const std::vector<int>& bounds, Fn&& fn) {
    Composition c(bounds.size(), 0);
    while (true) {
        fn(static_cast<const Composition&>(c));
        size_t i = c.size();
        while (i > 0) {
            --i;
            if (c[i] < bounds[i]) {
                ++c[i];
                break;
            }
            c[i] = 0;
            if (i == 0) return;
        }
        if (bounds.empty()) return;
    }
}

/// Number of maximal chains from (0,...,0) to (|A_1|,...,|A_p|):
/// the multinomial n choose (|A_1|,...,|A_p|).
std::uint64_t path_count(const IndifferencePartition& partition);

/// One maximal chain of compositions, each step incrementing one coordinate.
using CompositionPath = std::vector<Composition>;

/// All maximal chains from the origin to the top composition.
/// Guarded: throws GuardExceeded if path_count exceeds max_paths.
std::vector<CompositionPath> enumerate_paths(const IndifferencePartition& partition,
                                             std::uint64_t max_paths = 1'000'000);

}  // namespace capax

#endif
