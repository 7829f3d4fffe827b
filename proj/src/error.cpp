#include "cgm/error.hpp"

namespace cgm {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositionMismatch: return "CompositionMismatch";
    case ErrorCode::ForeignMorphism: return "ForeignMorphism";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::SymbolicObjects: return "SymbolicObjects";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::MalformedPayload: return "MalformedPayload";
    case ErrorCode::InconsistentContinuationIndex: return "InconsistentContinuationIndex";
    case ErrorCode::NoTwoCell: return "NoTwoCell";
    case ErrorCode::NotInSubcategory: return "NotInSubcategory";
    case ErrorCode::SamplerUnavailable: return "SamplerUnavailable";
    case ErrorCode::SpawnGradeError: return "SpawnGradeError";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidImplication: return "InvalidImplication";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::NotDiscrete: return "NotDiscrete";
    case ErrorCode::NotIndiscrete: return "NotIndiscrete";
    case ErrorCode::DinaturalityFailure: return "DinaturalityFailure";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::NotBottom: return "NotBottom";
    case ErrorCode::InfeasibleEnd: return "InfeasibleEnd";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GradeMismatch: return "GradeMismatch";
    case ErrorCode::UnknownPrim: return "UnknownPrim";
    case ErrorCode::RuntimeError: return "RuntimeError";
    case ErrorCode::RuleMismatch: return "RuleMismatch";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::InvalidValue: return "InvalidValue";
  }
  return "Unknown";
}

}  // namespace cgm
