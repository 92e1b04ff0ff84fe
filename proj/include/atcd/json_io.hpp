#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "atcd/attack_tree.hpp"

namespace atcd
{

/// Parses the node-list document
/// `{ "nodes": [ { "id", "type", "children", "cost", "damage", "prob" } ] }`.
/// Node indices follow document order; the root is the node nobody lists.
AttackTree parse_tree( const nlohmann::json& document );
AttackTree parse_tree( std::string_view text );
AttackTree load_tree( const std::filesystem::path& path );

nlohmann::json to_json( const AttackTree& tree );

/// Integral values become JSON integers so they print without a fraction.
nlohmann::json json_number( double value );
/// Stable serialization: same tree, same bytes.
std::string dump_tree( const AttackTree& tree );
void save_tree( const AttackTree& tree, const std::filesystem::path& path );

} // namespace atcd
