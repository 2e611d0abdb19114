#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfact {

/// Raised for violated preconditions and malformed input.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure with the byte offset (binary formats) or line number (text formats).
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " at " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace pfact
