#pragma once

#include <stdexcept>
#include <string>

namespace jumpimpact {

// Error categories map one-to-one onto CLI exit codes.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int model_validation = 3;
inline constexpr int numerical = 4;
inline constexpr int check_failure = 5;
}  // namespace exit_code

}  // namespace jumpimpact
