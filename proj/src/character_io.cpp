#include "ctheta/characters.hpp"

#include "ctheta/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <ostream>

namespace ctheta {

using nlohmann::json;

namespace {

json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return to_string(s.rational());
    const Complex z = s.to_complex();
    return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j, bool exact) {
    if (j.is_string()) {
        if (!exact) throw SchemaError("string entry in a table declared approximate");
        return Scalar(parse_rational(j.get<std::string>()));
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        if (exact) throw SchemaError("[re, im] entry in a table declared exact");
        return Scalar(Complex(j[0].get<double>(), j[1].get<double>()));
    }
    throw SchemaError("entry must be a \"p/q\" string or a [re, im] pair");
}

template <class T>
std::vector<T> array_field(const json& doc, const char* name) {
    if (!doc.contains(name) || !doc[name].is_array()) throw SchemaError(std::string("missing array field '") + name + "'");
    try {
        return doc[name].get<std::vector<T>>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("field '") + name + "': " + e.what());
    }
}

}  // namespace

void write_character_table(std::ostream& out, const CharacterTable& table) {
    const auto& classes = table.group().classes();
    json doc;
    doc["format"] = "character-table";
    doc["group_order"] = table.group().order();
    json sizes = json::array(), labels = json::array();
    for (const auto& cls : classes) {
        sizes.push_back(cls.size);
        labels.push_back(cls.label);
    }
    doc["class_sizes"] = sizes;
    doc["class_labels"] = labels;
    doc["irrep_labels"] = table.irrep_labels();
    doc["degrees"] = table.degrees();
    doc["exact"] = table.exact();
    json rows = json::array();
    for (std::size_t pi = 0; pi < table.irrep_count(); ++pi) {
        json row = json::array();
        for (std::size_t c = 0; c < table.class_count(); ++c) row.push_back(scalar_to_json(table.entry(pi, c)));
        rows.push_back(row);
    }
    doc["entries"] = rows;
    out << doc.dump(1) << '\n';
}

CharacterTable read_character_table(std::istream& in, const FiniteGroup& group) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("character table: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("character table: top level must be an object");
    if (!doc.contains("group_order") || !doc["group_order"].is_number_unsigned() ||
        doc["group_order"].get<std::uint64_t>() != group.order()) {
        throw SchemaError("character table: group_order missing or different from |G| = " + std::to_string(group.order()));
    }
    if (!doc.contains("exact") || !doc["exact"].is_boolean()) throw SchemaError("character table: missing boolean 'exact'");
    const bool exact = doc["exact"].get<bool>();
    const auto sizes = array_field<std::uint64_t>(doc, "class_sizes");
    const auto labels = array_field<std::string>(doc, "class_labels");
    const auto degrees = array_field<std::uint64_t>(doc, "degrees");
    const auto& classes = group.classes();
    const std::size_t k = classes.size();
    if (sizes.size() != k || labels.size() != k) {
        throw SchemaError("class count mismatch: file has " + std::to_string(sizes.size()) + ", group has " + std::to_string(k));
    }
    if (degrees.size() != k) throw SchemaError("degree count differs from class count");

    // file column -> group class. Labels decide when they name the group's
    // classes; otherwise columns are taken positionally.
    std::vector<std::size_t> column_to_class(k);
    std::map<std::string, std::size_t> by_label;
    for (std::size_t c = 0; c < k; ++c) by_label.emplace(classes[c].label, c);
    bool labelled = by_label.size() == k;
    for (std::size_t c = 0; c < k && labelled; ++c) {
        const auto it = by_label.find(labels[c]);
        labelled = it != by_label.end();
        if (labelled) column_to_class[c] = it->second;
    }
    if (labelled) {
        std::vector<bool> used(k, false);
        for (auto c : column_to_class) {
            if (used[c]) throw SchemaError("class labels repeat");
            used[c] = true;
        }
    } else {
        for (std::size_t c = 0; c < k; ++c) column_to_class[c] = c;
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != classes[column_to_class[c]].size) {
            throw SchemaError("class mismatch: column " + std::to_string(c) + " ('" + labels[c] + "') has size " +
                              std::to_string(sizes[c]) + ", group class '" + classes[column_to_class[c]].label +
                              "' has size " + std::to_string(classes[column_to_class[c]].size));
        }
    }

    if (!doc.contains("entries") || !doc["entries"].is_array()) throw SchemaError("missing array field 'entries'");
    const json& raw = doc["entries"];
    DenseMatrix<Scalar> entries(k, k);
    const bool nested = raw.size() == k && raw[0].is_array() && raw[0].size() == k &&
                        !(raw[0].size() == 2 && raw[0][0].is_number());
    if (!nested && raw.size() != k * k) throw SchemaError("entries must hold " + std::to_string(k * k) + " values");
    for (std::size_t pi = 0; pi < k; ++pi)
        for (std::size_t c = 0; c < k; ++c) {
            const json& cell = nested ? raw[pi][c] : raw[pi * k + c];
            entries(pi, column_to_class[c]) = scalar_from_json(cell, exact);
        }

    std::vector<std::string> irrep_labels;
    if (doc.contains("irrep_labels")) {
        irrep_labels = array_field<std::string>(doc, "irrep_labels");
        if (irrep_labels.size() != k) throw SchemaError("irrep_labels has wrong length");
    } else {
        for (std::size_t pi = 0; pi < k; ++pi) irrep_labels.push_back("chi" + std::to_string(pi));
    }
    CharacterTable table(group, std::move(irrep_labels), degrees, std::move(entries));
    if (group.order() <= 5000) {
        const std::string failure = check_structure_constants(table);
        if (!failure.empty()) throw SchemaError("class mismatch: " + failure);
    }
    return table;
}

CharacterTable read_character_table_file(const std::string& path, const FiniteGroup& group) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open character table '" + path + "'");
    return read_character_table(in, group);
}

void write_irrep_matrices(std::ostream& out, const IrrepMatrices& reps) {
    json doc;
    doc["format"] = "irrep-matrices";
    doc["group_order"] = reps.group.order();
    json list = json::array();
    for (const auto& irrep : reps.irreps) {
        json mats = json::array();
        for (const auto& m : irrep.matrices) {
            json flat = json::array();
            for (const auto& z : m.data()) flat.push_back(json::array({z.real(), z.imag()}));
            mats.push_back(flat);
        }
        list.push_back({{"label", irrep.label}, {"degree", irrep.degree}, {"matrices", mats}});
    }
    doc["irreps"] = list;
    out << doc.dump() << '\n';
}

IrrepMatrices read_irrep_matrices(std::istream& in, const FiniteGroup& group) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("irrep file: ") + e.what());
    }
    if (!doc.contains("group_order") || doc["group_order"] != group.order()) {
        throw SchemaError("irrep file: group_order differs from |G| = " + std::to_string(group.order()));
    }
    if (!doc.contains("irreps") || !doc["irreps"].is_array()) throw SchemaError("irrep file: missing 'irreps'");
    IrrepMatrices reps{group, {}};
    for (const auto& item : doc["irreps"]) {
        Irrep irrep;
        irrep.label = item.value("label", "pi" + std::to_string(reps.irreps.size()));
        irrep.degree = item.at("degree").get<int>();
        if (irrep.degree < 1) throw SchemaError("irrep file: degree must be positive");
        const auto d = static_cast<std::size_t>(irrep.degree);
        const json& mats = item.at("matrices");
        if (!mats.is_array() || mats.size() != group.order()) throw SchemaError("irrep file: one matrix per element required");
        for (const auto& flat : mats) {
            if (!flat.is_array() || flat.size() != d * d) throw SchemaError("irrep file: matrix has wrong size");
            DenseMatrix<Complex> m(d, d);
            for (std::size_t i = 0; i < d * d; ++i) {
                const json& z = flat[i];
                if (z.is_number()) {
                    m(i / d, i % d) = Complex(z.get<double>(), 0.0);
                } else if (z.is_array() && z.size() == 2) {
                    m(i / d, i % d) = Complex(z[0].get<double>(), z[1].get<double>());
                } else {
                    throw SchemaError("irrep file: entries must be numbers or [re, im]");
                }
            }
            irrep.matrices.push_back(std::move(m));
        }
        reps.irreps.push_back(std::move(irrep));
    }
    const std::string failure = check_irrep_matrices(reps);
    if (!failure.empty()) throw InvalidArgument("irrep file: " + failure);
    return reps;
}

}  // namespace ctheta
