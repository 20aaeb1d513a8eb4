#pragma once

#include <stdexcept>
#include <string>

namespace arm {

/// Invalid or inconsistent parameterization. `field()` names the offending key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field))
    {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A population could not be constructed from an otherwise valid config.
class InitError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem read/write failure.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arm
