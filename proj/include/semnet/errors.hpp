#ifndef SEMNET_ERRORS_HPP
#define SEMNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semnet {

// Exit-code mapping used by the CLI: 2 input, 3 empty result, 4 numeric.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyResultError : std::runtime_error {
    explicit EmptyResultError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, long line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

}  // namespace semnet

#endif
