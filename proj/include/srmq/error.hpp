#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace srmq {

enum class ErrorKind {
    malformed_token,
    invalid_state,
    unknown_position,
    inactive_position,
    duplicate_element,
    missing_element,
    bad_spec,
    io,
};

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the text parser; carries the byte offset of the offending token.
class parse_error : public error {
public:
    parse_error(std::size_t offset, std::size_t ordinal, const std::string& what)
        : error(ErrorKind::malformed_token, what + " at byte " + std::to_string(offset)),
          offset_(offset),
          ordinal_(ordinal) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
    /// Index of the command that failed to parse (0-based).
    [[nodiscard]] std::size_t ordinal() const noexcept { return ordinal_; }

private:
    std::size_t offset_;
    std::size_t ordinal_;
};

}  // namespace srmq
