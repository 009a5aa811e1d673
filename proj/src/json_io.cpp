#include "json_io.hpp"

#include "kmgm/errors.hpp"

#include <fstream>
#include <sstream>

namespace kmgm::json_io {
namespace {

bool is_flat_array(const Json& value) {
    if (!value.is_array()) return false;
    for (const auto& element : value) {
        if (element.is_structured()) return false;
    }
    return true;
}

void write_pretty(const Json& value, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (value.is_object() && !value.empty()) {
        out += "{\n";
        bool first = true;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            write_pretty(it.value(), indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else if (value.is_array() && !value.empty() && !is_flat_array(value)) {
        out += "[\n";
        bool first = true;
        for (const auto& element : value) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            write_pretty(element, indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
    } else {
        out += value.dump();
    }
}

}  // namespace

std::string pretty(const Json& value) {
    std::string out;
    write_pretty(value, 0, out);
    out += "\n";
    return out;
}

Json parse_document(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

const Json& require(const Json& object, std::string_view key, const std::string& path) {
    if (!object.is_object()) throw ParseError("field '" + path + "': expected an object");
    const auto it = object.find(key);
    if (it == object.end()) {
        throw ParseError("field '" + (path.empty() ? "" : path + ".") + std::string(key) +
                         "': missing");
    }
    return *it;
}

Index require_count(const Json& object, std::string_view key, const std::string& path) {
    const Json& value = require(object, key, path);
    const std::string where = (path.empty() ? "" : path + ".") + std::string(key);
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ParseError("field '" + where + "': expected a non-negative integer");
    }
    return static_cast<Index>(value.get<long long>());
}

double require_number(const Json& value, const std::string& path) {
    if (!value.is_number()) throw ParseError("field '" + path + "': expected a number");
    return value.get<double>();
}

Vector require_vector(const Json& value, Index dim, const std::string& path) {
    if (!value.is_array()) throw ParseError("field '" + path + "': expected an array");
    if (static_cast<Index>(value.size()) != dim) {
        throw ValidationError("field '" + path + "': has " + std::to_string(value.size()) +
                              " entries, declared dimension is " + std::to_string(dim));
    }
    Vector v(dim);
    for (Index k = 0; k < dim; ++k) {
        v[k] = require_number(value[static_cast<std::size_t>(k)], path + "[" + std::to_string(k) + "]");
    }
    return v;
}

Json bulk_to_json(const BulkPermutation& x) {
    Json rows = Json::array();
    for (Index r = 0; r < x.size(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < x.size(); ++c) row.push_back(x(r, c) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return rows;
}

BulkPermutation bulk_from_json(const Json& value, BulkShape shape, const std::string& path) {
    const Index size = shape.size();
    if (!value.is_array()) throw ParseError("field '" + path + "': expected an array");
    Matrix dense(size, size);
    auto read_entry = [&](const Json& entry, Index r, Index c) {
        const std::string where = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        if (!entry.is_number_integer()) throw ParseError("field '" + where + "': expected 0 or 1");
        dense(r, c) = static_cast<double>(entry.get<long long>());
    };
    if (!value.empty() && value.front().is_array()) {
        if (static_cast<Index>(value.size()) != size) {
            throw ValidationError("field '" + path + "': expected " + std::to_string(size) +
                                  " rows, got " + std::to_string(value.size()));
        }
        for (Index r = 0; r < size; ++r) {
            const Json& row = value[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Index>(row.size()) != size) {
                throw ValidationError("field '" + path + "[" + std::to_string(r) +
                                      "]': expected " + std::to_string(size) + " entries");
            }
            for (Index c = 0; c < size; ++c) read_entry(row[static_cast<std::size_t>(c)], r, c);
        }
    } else {
        if (static_cast<Index>(value.size()) != size * size) {
            throw ValidationError("field '" + path + "': expected " + std::to_string(size * size) +
                                  " entries, got " + std::to_string(value.size()));
        }
        for (Index r = 0; r < size; ++r) {
            for (Index c = 0; c < size; ++c) {
                read_entry(value[static_cast<std::size_t>(r * size + c)], r, c);
            }
        }
    }
    try {
        return BulkPermutation::from_dense(dense, shape.n, shape.m);
    } catch (const ValidationError& e) {
        throw ValidationError("field '" + path + "': " + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace kmgm::json_io
