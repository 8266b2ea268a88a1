#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pierce {

enum class ErrorKind {
    Argument,
    Validation,
    DegenerateQuadruple,
    InsufficientWitnesses,
    IncompleteCandidates,
    ConditionNotSatisfied,
    EmptyMultiset,
    Generator,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library. `stage` is filled in by the pipeline
// when an error crosses a stage boundary.
class PierceError : public std::runtime_error {
public:
    PierceError(ErrorKind kind, const std::string& what, std::string stage = {})
        : std::runtime_error(what), kind_(kind), stage_(std::move(stage)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorKind kind_;
    std::string stage_;
};

}  // namespace pierce
