#pragma once

#include <stdexcept>
#include <string>

namespace motiv {

enum class Errc {
    CycleDetected,
    NegativeWeight,
    DanglingEndpoint,
    DuplicateEdge,
    SelfLoop,
    DuplicateVertex,
    TargetUnreachable,
    BudgetExceeded,
    InstanceTooLarge,
    InvalidEpsilon,
    ZeroTarget,
    NonIntegerWeights,
    FormatError,
};

const char* errc_name(Errc code);

/// Library-level failure with a stable code; the CLI maps codes to exit
/// statuses (format/model errors -> 2, budget and size limits -> 3).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace motiv
