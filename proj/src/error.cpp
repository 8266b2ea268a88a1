#include "pierce/error.hpp"

namespace pierce {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Argument: return "argument";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::DegenerateQuadruple: return "degenerate-quadruple";
        case ErrorKind::InsufficientWitnesses: return "insufficient-witnesses";
        case ErrorKind::IncompleteCandidates: return "incomplete-candidates";
        case ErrorKind::ConditionNotSatisfied: return "condition-not-satisfied";
        case ErrorKind::EmptyMultiset: return "empty-multiset";
        case ErrorKind::Generator: return "generator";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace pierce
