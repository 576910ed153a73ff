#pragma once

#include <stdexcept>
#include <string>

namespace isa {

/// Failure classes surfaced by the library. The CLI maps each to its own
/// process exit code.
enum class ErrorKind {
    config,     ///< bad configuration, unknown option, missing file
    data,       ///< malformed or inconsistent input records
    numerical,  ///< rank deficiency, unidentifiable categories, no signal
    assertion,  ///< a requested property check did not hold
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return "config";
        case ErrorKind::data: return "data";
        case ErrorKind::numerical: return "numerical";
        case ErrorKind::assertion: return "assertion";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::config, msg); }
inline Error data_error(const std::string& msg) { return Error(ErrorKind::data, msg); }
inline Error numerical_error(const std::string& msg) { return Error(ErrorKind::numerical, msg); }
inline Error assertion_error(const std::string& msg) { return Error(ErrorKind::assertion, msg); }

}  // namespace isa
