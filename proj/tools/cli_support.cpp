#include "cli_support.hpp"

#include "ctheta/apps.hpp"
#include "ctheta/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace ctheta::cli {

namespace {

std::pair<std::string, std::string> split_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

}  // namespace

std::vector<long long> parse_int_list(const std::string& text) {
    std::string cleaned = text;
    for (char& ch : cleaned)
        if (ch == ',' || ch == '{' || ch == '}' || ch == '[' || ch == ']') ch = ' ';
    std::istringstream in(cleaned);
    std::vector<long long> out;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw InvalidArgument("'" + token + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

FiniteGroup parse_group_spec(const std::string& spec) {
    const auto [kind, args] = split_spec(spec);
    if (kind == "sym") {
        const auto v = parse_int_list(args);
        if (v.size() != 1) throw InvalidArgument("sym:n takes one integer");
        return make_symmetric(static_cast<int>(v[0]));
    }
    if (kind == "cyclic") {
        const auto v = parse_int_list(args);
        if (v.empty()) throw InvalidArgument("cyclic: needs at least one modulus");
        std::vector<int> moduli(v.begin(), v.end());
        return make_abelian_product(moduli);
    }
    if (kind == "gl") {
        const auto v = parse_int_list(args);
        if (v.size() != 2) throw InvalidArgument("gl:q,n takes two integers");
        return make_general_linear(static_cast<int>(v[0]), static_cast<int>(v[1]));
    }
    if (kind == "table") {
        auto in = open_input(args);
        return read_cayley_table(in);
    }
    throw InvalidArgument("unknown group spec '" + spec + "' (expected sym:, cyclic:, gl: or table:)");
}

ConnectionSet parse_connection_spec(const std::string& spec, const FiniteGroup& group) {
    const auto [kind, args] = split_spec(spec);
    if (kind == "empty") return ConnectionSet::empty(group);
    if (kind == "efp") {
        const auto v = parse_int_list(args);
        if (v.size() != 1) throw InvalidArgument("efp:k takes one integer");
        return efp_connection(group, static_cast<int>(v[0]));
    }
    if (kind == "gl-rank") {
        const auto v = parse_int_list(args);
        if (v.size() != 1) throw InvalidArgument("gl-rank:k takes one integer");
        return gl_connection(group, static_cast<int>(v[0]));
    }
    if (kind == "classes") {
        std::vector<std::size_t> classes;
        for (long long c : parse_int_list(args)) {
            if (c < 0) throw InvalidArgument("class index must be nonnegative");
            classes.push_back(static_cast<std::size_t>(c));
        }
        return ConnectionSet::from_classes(group, std::move(classes));
    }
    if (kind == "elements") {
        std::vector<long long> raw;
        if (!args.empty() && args.front() == '{') {
            raw = parse_int_list(args);
        } else {
            auto in = open_input(args);
            raw = parse_int_list(std::string(std::istreambuf_iterator<char>(in), {}));
        }
        std::vector<Element> elements;
        for (long long x : raw) {
            if (x < 0 || static_cast<unsigned long long>(x) >= group.order()) {
                throw InvalidArgument("element " + std::to_string(x) + " out of range");
            }
            elements.push_back(static_cast<Element>(x));
        }
        return ConnectionSet::from_elements(group, std::move(elements));
    }
    throw InvalidArgument("unknown connection spec '" + spec + "'");
}

std::optional<CharacterTable> character_table_for(const FiniteGroup& group, const std::optional<std::string>& path) {
    if (path) return read_character_table_file(*path, group);
    if (group.kind() == GroupKind::Symmetric) return symmetric_character_table(group);
    if (group.kind() == GroupKind::AbelianProduct) return abelian_character_table(group);
    return std::nullopt;
}

std::optional<IrrepMatrices> irreps_for(const FiniteGroup& group, const std::optional<std::string>& path) {
    if (path) {
        auto in = open_input(*path);
        return read_irrep_matrices(in, group);
    }
    if (group.kind() == GroupKind::AbelianProduct) return irreps_from_abelian_table(abelian_character_table(group));
    if (group.kind() == GroupKind::Symmetric && group.degree() <= 3) return symmetric_basic_irreps(group);
    return std::nullopt;
}

GroupFunction read_function_file(const std::string& path, const FiniteGroup& group) {
    auto in = open_input(path);
    std::string kind;
    if (!(in >> kind) || (kind != "class" && kind != "element")) {
        throw InvalidArgument("function file must start with 'class' or 'element'");
    }
    std::vector<Scalar> values;
    std::string token;
    while (in >> token) {
        if (token.find_first_of(".eE") != std::string::npos) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size()) throw InvalidArgument("bad value '" + token + "'");
            values.push_back(Scalar::approx(v));
        } else {
            values.emplace_back(parse_rational(token));
        }
    }
    if (kind == "class") {
        if (values.size() != group.classes().size()) {
            throw InvalidArgument("expected " + std::to_string(group.classes().size()) + " class values, got " +
                                  std::to_string(values.size()));
        }
        return GroupFunction::from_class_function(ClassFunction{group, std::move(values)});
    }
    if (values.size() != group.order()) {
        throw InvalidArgument("expected " + std::to_string(group.order()) + " element values, got " + std::to_string(values.size()));
    }
    return GroupFunction{group, std::move(values)};
}

std::string file_digest(const std::string& path) {
    auto in = open_input(path);
    std::uint64_t h = 1469598103934665603ULL;
    char ch = 0;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ctheta::cli
