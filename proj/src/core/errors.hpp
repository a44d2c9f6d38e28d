#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

// Exit-code taxonomy shared with the CLI: 2 config, 3 numeric, 4 I/O.
class Error : public std::runtime_error {
public:
    Error(std::string message, int code)
        : std::runtime_error(std::move(message)), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string message) : Error(std::move(message), 2) {}
};

class NumericError : public Error {
public:
    explicit NumericError(std::string message) : Error(std::move(message), 3) {}
};

class IoError : public Error {
public:
    explicit IoError(std::string message) : Error(std::move(message), 4) {}
};

} // namespace biphoton
