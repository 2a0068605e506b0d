#pragma once

#include <stdexcept>
#include <string>

namespace qdouble {

enum class ErrorKind {
    InvalidInput,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotLatinSquare,
    SizeExceeded,
    NotPrimePower,
    AxiomFailure,
    NotSubgroup,
    NumericalDegeneracy,
    GroupMismatch,
    NonIntegerMultiplicity,
    NegativeOrNonInteger,
    CocycleIdentityFailure,
    NotAField,
    NotAbelian,
    NotBimultiplicative,
    SubgroupMismatch,
    ConditionMismatch,
    SizeMismatch,
    DimensionCap,
    ZeroProjection,
    InvalidRibbon,
    NotInSubgroup,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qdouble
