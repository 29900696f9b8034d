#ifndef CAPAX_ERRORS_HPP
#define CAPAX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace capax {

/// Base class for all capax error conditions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// mu(empty) != 0 or mu(X) != 1.
class BoundaryViolation : public Error {
public:
    BoundaryViolation(const std::string& what, std::uint64_t endpoint_mask)
        : Error(what), endpoint(endpoint_mask) {}
    std::uint64_t endpoint;
};

/// Found A and A+{x} with mu(A) > mu(A+{x}); masks identify the witness pair.
class MonotonicityViolation : public Error {
public:
    MonotonicityViolation(const std::string& what, std::uint64_t smaller, std::uint64_t larger)
        : Error(what), subset(smaller), superset(larger) {}
    std::uint64_t subset;
    std::uint64_t superset;
};

class InvalidProbabilities : public Error {
public:
    using Error::Error;
};

/// A supplied block is not a set of indifference; the masks are two
/// same-composition subsets with different measure values.
class NotIndifferent : public Error {
public:
    NotIndifferent(const std::string& what, std::uint64_t block, std::uint64_t first,
                   std::uint64_t second)
        : Error(what), block_mask(block), witness_a(first), witness_b(second) {}
    std::uint64_t block_mask;
    std::uint64_t witness_a;
    std::uint64_t witness_b;
};

/// A stored matrix violates a representation invariant (e.g. not axis-monotone).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class NegativeScore : public Error {
public:
    using Error::Error;
};

class ScoreOutOfRange : public Error {
public:
    using Error::Error;
};

/// A decomposition block has mu(A_i) = 0; `block` is its index in the partition.
class ZeroBlockMeasure : public Error {
public:
    ZeroBlockMeasure(const std::string& what, int block_index)
        : Error(what), block(block_index) {}
    int block;
};

class NotBelief : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

/// An enumeration or allocation guard was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// File or argument content that cannot be parsed or fails schema checks.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace capax

#endif
