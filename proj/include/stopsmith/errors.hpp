#pragma once

#include <stdexcept>
#include <string>

namespace stopsmith {

// Library errors carry a stable machine-readable code next to the human
// message; the CLI surfaces the code verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct BadThreshold : Error {
    explicit BadThreshold(const std::string& m) : Error("bad_threshold", m) {}
};

struct BadParameter : Error {
    explicit BadParameter(const std::string& m) : Error("bad_parameter", m) {}
};

struct BadProbability : Error {
    explicit BadProbability(const std::string& m) : Error("bad_probability", m) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& m) : Error("too_large", m) {}
};

struct DuplicateEntries : Error {
    explicit DuplicateEntries(const std::string& m) : Error("duplicate_entries", m) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain_error", m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("parse_error", m) {}
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error("io_error", m) {}
};

}  // namespace stopsmith
