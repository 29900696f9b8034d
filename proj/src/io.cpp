#include "capax/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace capax {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void check_version(const json& j) {
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        throw ParseError("missing format_version");
    const int v = j["format_version"].get<int>();
    if (v != MeasureFile::kFormatVersion)
        throw ParseError("unsupported format_version " + std::to_string(v));
}

std::vector<double> number_array(const json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string(field) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError(std::string(field) + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

GroundSet ground_from_json(const json& j) {
    if (!j.contains("labels") || !j["labels"].is_array()) throw ParseError("missing labels array");
    std::vector<std::string> labels;
    for (const auto& l : j["labels"]) {
        if (!l.is_string()) throw ParseError("labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    GroundSet ground(std::move(labels));
    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<int>() != ground.size())
            throw ParseError("field n does not match the label count");
    }
    return ground;
}

}  // namespace

IndifferencePartition MeasureFile::partition() const {
    std::vector<Mask> masks;
    masks.reserve(blocks.size());
    for (const auto& block : blocks) {
        Mask m = 0;
        for (const auto& label : block) m |= element_mask(ground.index_of(label));
        masks.push_back(m);
    }
    return IndifferencePartition(ground, std::move(masks));
}

PSymmetricCapacity MeasureFile::to_psym() const {
    if (dense) throw ParseError("expected psym storage");
    return PSymmetricCapacity(ground, partition(), representation, matrix);
}

SetFunction MeasureFile::to_set_function() const {
    if (!dense) throw ParseError("expected dense storage");
    return SetFunction(ground, values);
}

MeasureFile MeasureFile::from_dense(const GroundSet& g, Repr repr, std::vector<double> vals) {
    MeasureFile f{g, repr, true, std::move(vals), {}, {}, std::nullopt};
    if (f.values.size() != (size_t{1} << g.size()))
        throw ParseError("dense measure needs 2^n values");
    return f;
}

MeasureFile MeasureFile::from_psym(const PSymmetricCapacity& psym) {
    MeasureFile f{psym.ground(), psym.tag(), false, {}, {}, psym.matrix(), std::nullopt};
    for (Mask block : psym.partition().blocks()) {
        std::vector<std::string> labels;
        for_each_element(block, [&](Element e) { labels.push_back(psym.ground().label(e)); });
        f.blocks.push_back(std::move(labels));
    }
    return f;
}

MeasureFile MeasureFile::parse(const std::string& text) {
    const json j = parse_json(text);
    check_version(j);
    GroundSet ground = ground_from_json(j);

    if (!j.contains("representation") || !j["representation"].is_string())
        throw ParseError("missing representation tag");
    const Repr repr = repr_from_name(j["representation"].get<std::string>());

    if (!j.contains("storage") || !j["storage"].is_string())
        throw ParseError("missing storage tag");
    const std::string storage = j["storage"].get<std::string>();

    if (storage == "dense") {
        if (!j.contains("values")) throw ParseError("dense storage needs a values array");
        MeasureFile f = from_dense(ground, repr, number_array(j["values"], "values"));
        if (j.contains("note") && j["note"].is_string()) f.note = j["note"].get<std::string>();
        return f;
    }
    if (storage != "psym") throw ParseError("unknown storage tag '" + storage + "'");

    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw ParseError("psym storage needs a blocks array");
    MeasureFile f{std::move(ground), repr, false, {}, {}, {}, std::nullopt};
    for (const auto& block : j["blocks"]) {
        if (!block.is_array()) throw ParseError("each block must be an array of labels");
        std::vector<std::string> labels;
        for (const auto& l : block) {
            if (!l.is_string()) throw ParseError("block labels must be strings");
            labels.push_back(l.get<std::string>());
        }
        f.blocks.push_back(std::move(labels));
    }
    if (!j.contains("matrix")) throw ParseError("psym storage needs a matrix array");
    f.matrix = number_array(j["matrix"], "matrix");

    const IndifferencePartition partition = f.partition();
    if (j.contains("extents")) {
        std::vector<int> extents;
        for (const auto& e : j["extents"]) {
            if (!e.is_number_integer()) throw ParseError("extents must be integers");
            extents.push_back(e.get<int>());
        }
        if (extents != partition.extents())
            throw ParseError("extents field does not match the block sizes");
    }
    if (f.matrix.size() != partition.matrix_size())
        throw ParseError("matrix has " + std::to_string(f.matrix.size()) + " entries, expected " +
                         std::to_string(partition.matrix_size()));
    if (j.contains("note") && j["note"].is_string()) f.note = j["note"].get<std::string>();
    return f;
}

std::string MeasureFile::serialize() const {
    json j;
    j["format_version"] = kFormatVersion;
    j["n"] = ground.size();
    j["labels"] = ground.labels();
    j["representation"] = repr_name(representation);
    j["storage"] = dense ? "dense" : "psym";
    if (dense) {
        j["values"] = values;
    } else {
        j["blocks"] = blocks;
        j["extents"] = partition().extents();
        j["matrix"] = matrix;
    }
    if (note) j["note"] = *note;
    return j.dump(2) + "\n";
}

MeasureFile MeasureFile::load(const std::string& path) {
    try {
        return parse(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void MeasureFile::save(const std::string& path) const { write_file(path, serialize()); }

ScoreVector ScoreFile::parse(const std::string& text, const GroundSet& ground) {
    const json j = parse_json(text);
    check_version(j);
    if (!j.contains("scores")) throw ParseError("missing scores field");
    const json& s = j["scores"];
    std::vector<double> values(static_cast<size_t>(ground.size()), 0.0);
    if (s.is_array()) {
        if (s.size() != values.size())
            throw ParseError("scores array must have one entry per element");
        values = number_array(s, "scores");
    } else if (s.is_object()) {
        std::vector<bool> seen(values.size(), false);
        for (const auto& [label, v] : s.items()) {
            if (!v.is_number()) throw ParseError("scores must be numbers");
            const Element i = ground.index_of(label);
            if (seen[static_cast<size_t>(i)]) throw ParseError("duplicate score for " + label);
            seen[static_cast<size_t>(i)] = true;
            values[static_cast<size_t>(i)] = v.get<double>();
        }
        for (size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) throw ParseError("missing score for " + ground.label(static_cast<int>(i)));
    } else {
        throw ParseError("scores must be an array or a label map");
    }
    return ScoreVector(std::move(values));
}

ScoreVector ScoreFile::load(const std::string& path, const GroundSet& ground) {
    try {
        return parse(read_file(path), ground);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string ScoreFile::serialize(const GroundSet& ground, const ScoreVector& scores) {
    json map = json::object();
    for (int i = 0; i < ground.size(); ++i) map[ground.label(i)] = scores[i];
    json j;
    j["format_version"] = kFormatVersion;
    j["scores"] = map;
    return j.dump(2) + "\n";
}

IndifferencePartition load_partition(const std::string& path, const GroundSet& ground) {
    const json j = parse_json(read_file(path));
    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw ParseError(path + ": partition file needs a blocks array");
    std::vector<Mask> masks;
    for (const auto& block : j["blocks"]) {
        Mask m = 0;
        for (const auto& l : block) {
            if (!l.is_string()) throw ParseError(path + ": block labels must be strings");
            m |= element_mask(ground.index_of(l.get<std::string>()));
        }
        masks.push_back(m);
    }
    return IndifferencePartition(ground, std::move(masks));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

}  // namespace capax
