#include "covkit/cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace covkit::cli {

namespace {

void write_string(std::string& out, const std::string& s) {
    out += nlohmann::json(s).dump();
}

void write_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    std::string text = buffer;
    if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
    out += text;
}

void write(std::string& out, const Json& v, int indent, int depth) {
    const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) out += ',';
                first = false;
                out += pad;
                write_string(out, key);
                out += sep;
                write(out, item, indent, depth + 1);
            }
            out += close;
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ',';
                first = false;
                out += pad;
                write(out, item, indent, depth + 1);
            }
            out += close;
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            write_number(out, v.get<double>());
            return;
        case Json::value_t::string:
            write_string(out, v.get<std::string>());
            return;
        default:
            out += v.dump();
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

std::string dump(const Json& value, int indent) {
    std::string out;
    write(out, value, indent, 0);
    return out;
}

Json parse_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& err) {
        const auto [line, column] = line_column(text, err.byte > 0 ? err.byte - 1 : 0);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column),
                          "malformed JSON (line " + std::to_string(line) + ", column " + std::to_string(column) + ")");
    }
}

Json load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path);
}

void apply_override(Json& document, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--override " + assignment, "expected key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;
    }

    Json* node = &document;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string token = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (token.empty()) throw ConfigError("--override " + key, "empty path segment");
        Json* next = nullptr;
        if (node->is_array()) {
            std::size_t index = 0;
            try {
                index = static_cast<std::size_t>(std::stoul(token));
            } catch (const std::exception&) {
                throw ConfigError("--override " + key, "'" + token + "' is not an array index");
            }
            if (index >= node->size()) throw ConfigError("--override " + key, "array index out of range");
            next = &(*node)[index];
        } else {
            if (node->is_null()) *node = Json::object();
            if (!node->is_object()) throw ConfigError("--override " + key, "'" + token + "' is not inside an object");
            next = &(*node)[token];
        }
        if (dot == std::string::npos) {
            *next = value;
            return;
        }
        node = next;
        start = dot + 1;
    }
}

}  // namespace covkit::cli
