#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace covkit::cli {

using Json = nlohmann::ordered_json;

/// Configuration or I/O problem; `where` is a JSON pointer, a file path or
/// a "line L column C" position.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& what)
        : std::runtime_error(what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Serializes with 17 significant digits for floating point values.
/// Non-finite numbers are written as null.
std::string dump(const Json& value, int indent = 2);

/// Parses a file. Syntax errors are reported with line and column.
Json load_file(const std::string& path);

/// Parses text; `source` names it in diagnostics.
Json parse_text(const std::string& text, const std::string& source);

/// Sets a dotted path ("fd.step", "grid.counts.0") from "key=value". The
/// value is parsed as JSON and falls back to a plain string.
void apply_override(Json& document, const std::string& assignment);

}  // namespace covkit::cli
