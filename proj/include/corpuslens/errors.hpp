#ifndef CORPUSLENS_ERRORS_HPP
#define CORPUSLENS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace corpuslens {

// Exit codes used by the CLI. Library code throws the matching exception type.
enum class ExitCode : int {
    Ok = 0,
    ConfigError = 2,
    DataError = 3,
    NumericError = 4,
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace corpuslens

#endif
