#include "capax/ground_set.hpp"

#include <algorithm>
#include <unordered_set>

namespace capax {

namespace {

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    return labels;
}

thread_local int g_dense_ban_depth = 0;

}  // namespace

GroundSet::GroundSet(int n) : GroundSet(default_labels(n)) {}

GroundSet::GroundSet(std::vector<std::string> labels) : n_(static_cast<int>(labels.size())), labels_(std::move(labels)) {
    if (n_ < 1) throw ParseError("ground set needs at least one element");
    if (n_ > kMaxElements)
        throw ParseError("ground set of " + std::to_string(n_) + " elements exceeds the mask width of " +
                         std::to_string(kMaxElements));
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw ParseError("empty element label");
        if (!seen.insert(l).second) throw ParseError("duplicate element label '" + l + "'");
    }
}

Element GroundSet::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw ParseError("unknown element label '" + label + "'");
    return static_cast<Element>(it - labels_.begin());
}

std::string GroundSet::format_subset(Mask m) const {
    std::string out = "{";
    bool first = true;
    for_each_element(m, [&](Element i) {
        if (!first) out += ",";
        out += label(i);
        first = false;
    });
    out += "}";
    return out;
}

void GroundSet::require_dense(const char* context) const {
    if (n_ > kMaxDenseElements)
        throw GuardExceeded(std::string(context) + ": dense 2^n storage is capped at n = " +
                            std::to_string(kMaxDenseElements) + " (got n = " + std::to_string(n_) + ")");
    if (ScopedDenseBan::active())
        throw GuardExceeded(std::string(context) + ": dense allocation is disabled in this scope");
}

ScopedDenseBan::ScopedDenseBan() { ++g_dense_ban_depth; }
ScopedDenseBan::~ScopedDenseBan() { --g_dense_ban_depth; }
bool ScopedDenseBan::active() { return g_dense_ban_depth > 0; }

}  // namespace capax
