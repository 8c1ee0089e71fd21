#pragma once

#include "ctheta/characters.hpp"
#include "ctheta/graphs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctheta::cli {

// sym:n | cyclic:m1[,m2,...] | gl:q,n | table:file
FiniteGroup parse_group_spec(const std::string& spec);

// efp:k | gl-rank:k | classes:i,j,... | elements:{a,b,...} | elements:file | empty
ConnectionSet parse_connection_spec(const std::string& spec, const FiniteGroup& group);

// Built-in character table (symmetric and abelian groups) or the one in
// `path`; nullopt when neither is available.
std::optional<CharacterTable> character_table_for(const FiniteGroup& group, const std::optional<std::string>& path);

// Built-in irreps (abelian groups, S_n for n <= 3) or the ones in `path`.
std::optional<IrrepMatrices> irreps_for(const FiniteGroup& group, const std::optional<std::string>& path);

// Function file: "class" or "element", then one value per class/element;
// values are "p/q" rationals or decimals.
GroupFunction read_function_file(const std::string& path, const FiniteGroup& group);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

std::vector<long long> parse_int_list(const std::string& text);

}  // namespace ctheta::cli
