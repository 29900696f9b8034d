#ifndef CAPAX_GROUND_SET_HPP
#define CAPAX_GROUND_SET_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "capax/errors.hpp"

namespace capax {

/// A subset of the ground set, bit i <-> element i.
using Mask = std::uint64_t;

/// Elements are indices 0..n-1 into the ground set's label table.
using Element = int;

/// Hard cap for dense 2^n arrays.  Compressed representations are exempt
/// (they only need masks, so they work up to the mask width).
inline constexpr int kMaxDenseElements = 24;

/// Widest ground set representable with 64-bit masks.
inline constexpr int kMaxElements = 64;

inline int mask_card(Mask m) { return std::popcount(m); }

inline Mask element_mask(Element i) { return Mask{1} << i; }

inline bool mask_contains(Mask m, Element i) { return (m >> i) & Mask{1}; }

/// Index of the lowest set bit; m must be nonzero.
inline Element mask_lowest(Mask m) { return std::countr_zero(m); }

/// Visits every submask of `m`, including 0 and `m` itself.
template <class Fn>
void for_each_submask(Mask m, Fn&& fn) {
    Mask sub = m;
    while (true) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & m;
    }
}

/// Visits the elements (set bits) of `m` in ascending order.
template <class Fn>
void for_each_element(Mask m, Fn&& fn) {
    while (m != 0) {
        fn(mask_lowest(m));
        m &= m - 1;
    }
}

/// The finite universal set X = {x_1,...,x_n}, with one label per element.
class GroundSet {
public:
    /// Default labels "x1".."xn".
    explicit GroundSet(int n);
    GroundSet(std::vector<std::string> labels);

    int size() const { return n_; }
    Mask full_mask() const { return n_ == kMaxElements ? ~Mask{0} : (Mask{1} << n_) - 1; }
    std::uint64_t subset_count() const { return std::uint64_t{1} << n_; }

    const std::string& label(Element i) const { return labels_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a label; throws ParseError if unknown.
    Element index_of(const std::string& label) const;

    /// Renders a mask as "{a,b,c}" using the element labels.
    std::string format_subset(Mask m) const;

    bool operator==(const GroundSet& other) const { return labels_ == other.labels_; }

    /// Throws GuardExceeded unless n is within the dense cap (and the
    /// thread-local dense ban is not active).
    void require_dense(const char* context) const;

private:
    int n_;
    std::vector<std::string> labels_;
};

/// While alive, any attempt to allocate a dense 2^n structure on this thread
/// throws GuardExceeded.  Used by the CLI to honor --densify and by tests to
/// prove that compressed code paths never materialize dense arrays.
class ScopedDenseBan {
public:
    ScopedDenseBan();
    ~ScopedDenseBan();
    ScopedDenseBan(const ScopedDenseBan&) = delete;
    ScopedDenseBan& operator=(const ScopedDenseBan&) = delete;

    static bool active();
};

}  // namespace capax

#endif
