#pragma once

#include <stdexcept>
#include <string>

namespace hashchem {

/// Invalid parameter or configuration value. The message names the field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hashchem
