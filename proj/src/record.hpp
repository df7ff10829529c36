#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stopsmith::cli {

// 15 significant digits; shared by the JSON and CSV writers so both modes
// encode identical numeric values.
std::string format_double(double x);

// Flat ordered record, rendered as one JSON object or a CSV header + row.
class Record {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value);
    void add(const std::string& key, int value);
    void add(const std::string& key, std::int64_t value);
    void add(const std::string& key, std::uint64_t value);
    void add(const std::string& key, double value);
    void add(const std::string& key, bool value);

    std::string json() const;
    std::string csv() const;

private:
    enum class Kind { Text, Literal };

    struct Field {
        std::string key;
        std::string value;
        Kind kind;
    };

    std::vector<Field> fields_;
};

}  // namespace stopsmith::cli
