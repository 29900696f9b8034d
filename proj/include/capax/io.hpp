#ifndef CAPAX_IO_HPP
#define CAPAX_IO_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "capax/choquet.hpp"
#include "capax/psym.hpp"
#include "capax/set_function.hpp"

namespace capax {

/// On-disk measure: either a dense 2^n value array or a compressed matrix
/// with its blocks, in any of the three representations.  Values are raw;
/// validation happens when the caller converts to a typed object.
struct MeasureFile {
    static constexpr int kFormatVersion = 1;

    GroundSet ground;
    Repr representation = Repr::capacity;
    bool dense = true;

    std::vector<double> values;         // dense: 2^n entries, bitmask order
    std::vector<std::vector<std::string>> blocks;  // psym: labels per block
    std::vector<double> matrix;         // psym: flat row-major, last block fastest

    std::optional<std::string> note;    // provenance of derived files

    /// Blocks resolved against the ground set, canonically ordered.
    IndifferencePartition partition() const;

    PSymmetricCapacity to_psym() const;     // psym storage only
    SetFunction to_set_function() const;    // dense storage only

    static MeasureFile from_dense(const GroundSet& ground, Repr repr, std::vector<double> values);
    static MeasureFile from_psym(const PSymmetricCapacity& psym);

    static MeasureFile parse(const std::string& json_text);
    static MeasureFile load(const std::string& path);
    std::string serialize() const;
    void save(const std::string& path) const;
};

/// Scores file: {"scores": {label: value, ...}} or {"scores": [v1, ...]}.
/// Every ground-set label must be covered exactly once.
struct ScoreFile {
    static constexpr int kFormatVersion = 1;

    static ScoreVector parse(const std::string& json_text, const GroundSet& ground);
    static ScoreVector load(const std::string& path, const GroundSet& ground);
    static std::string serialize(const GroundSet& ground, const ScoreVector& scores);
};

/// Partition file: {"blocks": [[label, ...], ...]}.
IndifferencePartition load_partition(const std::string& path, const GroundSet& ground);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace capax

#endif
