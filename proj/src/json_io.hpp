#pragma once

// JSON helpers shared by the dataset reader/writer and the CLI.

#include "kmgm/consistency.hpp"
#include "kmgm/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace kmgm::json_io {

using Json = nlohmann::json;

inline constexpr int kSpecVersion = 1;

/// Arrays of scalars go on one line, everything else is indented.
std::string pretty(const Json& value);

Json parse_document(std::string_view text);

/// Throws ParseError naming `path` when the key is absent.
const Json& require(const Json& object, std::string_view key, const std::string& path);
Index require_count(const Json& object, std::string_view key, const std::string& path);
double require_number(const Json& value, const std::string& path);
Vector require_vector(const Json& value, Index dim, const std::string& path);

Json bulk_to_json(const BulkPermutation& x);
/// Accepts a list of rows or a flat row-major list.
BulkPermutation bulk_from_json(const Json& value, BulkShape shape, const std::string& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace kmgm::json_io
