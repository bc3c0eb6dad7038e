#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace signorini {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SIGNORINI_DEFINE_ERROR(Name)              \
    class Name : public Error {                   \
    public:                                       \
        explicit Name(const std::string& what)    \
            : Error(#Name ": " + what) {}         \
    }

SIGNORINI_DEFINE_ERROR(MeshTopologyError);
SIGNORINI_DEFINE_ERROR(NonFiniteData);
SIGNORINI_DEFINE_ERROR(PointOutsideDomain);
SIGNORINI_DEFINE_ERROR(LinearSolveFailure);
SIGNORINI_DEFINE_ERROR(SolverDiverged);
SIGNORINI_DEFINE_ERROR(OracleTooLarge);
SIGNORINI_DEFINE_ERROR(NegativeInput);
SIGNORINI_DEFINE_ERROR(PositiveInput);
SIGNORINI_DEFINE_ERROR(NoExactSolution);
SIGNORINI_DEFINE_ERROR(DegenerateInput);
SIGNORINI_DEFINE_ERROR(SingularSystem);
SIGNORINI_DEFINE_ERROR(IoError);

#undef SIGNORINI_DEFINE_ERROR

/// Invalid configuration; carries the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& reason)
        : Error("ConfigError: " + key + ": " + reason), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace signorini
