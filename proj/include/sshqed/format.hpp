#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sshqed::io {

using Json = nlohmann::ordered_json;

/// 12 significant digits, scientific notation, independent of the global locale.
std::string format_double(double v);

/// Indented JSON with every float printed through format_double; non-finite
/// floats become null.
std::string dump_json(const Json& j);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string to_csv(const Table& t);

/// Array of objects, one per row.
Json to_json(const Table& t);

/// Flattens nested objects and arrays into key,value rows ("a.b", "a.0").
Table flatten(const Json& j);

/// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace sshqed::io
