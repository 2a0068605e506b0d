#include "qdouble/error.hpp"

namespace qdouble {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotAssociative: return "NotAssociative";
        case ErrorKind::NoIdentity: return "NoIdentity";
        case ErrorKind::NoInverse: return "NoInverse";
        case ErrorKind::NotLatinSquare: return "NotLatinSquare";
        case ErrorKind::SizeExceeded: return "SizeExceeded";
        case ErrorKind::NotPrimePower: return "NotPrimePower";
        case ErrorKind::AxiomFailure: return "AxiomFailure";
        case ErrorKind::NotSubgroup: return "NotSubgroup";
        case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
        case ErrorKind::NegativeOrNonInteger: return "NegativeOrNonInteger";
        case ErrorKind::CocycleIdentityFailure: return "CocycleIdentityFailure";
        case ErrorKind::NotAField: return "NotAField";
        case ErrorKind::NotAbelian: return "NotAbelian";
        case ErrorKind::NotBimultiplicative: return "NotBimultiplicative";
        case ErrorKind::SubgroupMismatch: return "SubgroupMismatch";
        case ErrorKind::ConditionMismatch: return "ConditionMismatch";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::DimensionCap: return "DimensionCap";
        case ErrorKind::ZeroProjection: return "ZeroProjection";
        case ErrorKind::InvalidRibbon: return "InvalidRibbon";
        case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace qdouble
