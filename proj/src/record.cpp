#include "record.hpp"

#include <cstdio>

namespace stopsmith::cli {

std::string format_double(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.15g", x);
    return buffer;
}

void Record::add(const std::string& key, const std::string& value) {
    fields_.push_back({key, value, Kind::Text});
}

void Record::add(const std::string& key, const char* value) {
    fields_.push_back({key, value, Kind::Text});
}

void Record::add(const std::string& key, int value) {
    fields_.push_back({key, std::to_string(value), Kind::Literal});
}

void Record::add(const std::string& key, std::int64_t value) {
    fields_.push_back({key, std::to_string(value), Kind::Literal});
}

void Record::add(const std::string& key, std::uint64_t value) {
    fields_.push_back({key, std::to_string(value), Kind::Literal});
}

void Record::add(const std::string& key, double value) {
    fields_.push_back({key, format_double(value), Kind::Literal});
}

void Record::add(const std::string& key, bool value) {
    fields_.push_back({key, value ? "true" : "false", Kind::Literal});
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string Record::json() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i > 0) out += ',';
        out += '"' + json_escape(fields_[i].key) + "\":";
        if (fields_[i].kind == Kind::Text)
            out += '"' + json_escape(fields_[i].value) + '"';
        else
            out += fields_[i].value;
    }
    out += '}';
    return out;
}

std::string Record::csv() const {
    std::string header;
    std::string row;
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i > 0) {
            header += ',';
            row += ',';
        }
        header += csv_escape(fields_[i].key);
        row += csv_escape(fields_[i].value);
    }
    return header + '\n' + row;
}

}  // namespace stopsmith::cli
