#pragma once

#include <stdexcept>
#include <string>

namespace cfrow {

// Domain errors: bad input or a request outside the mathematical domain.
// The CLI maps every subclass of this to exit code 2.
class domain_error : public std::domain_error {
public:
    domain_error(std::string kind, const std::string& what)
        : std::domain_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define CFROW_DEFINE_ERROR(Name)                                                   \
    class Name : public domain_error {                                             \
    public:                                                                        \
        explicit Name(const std::string& what = {}) : domain_error(#Name, what) {} \
    };

CFROW_DEFINE_ERROR(ZeroDeterminant)
CFROW_DEFINE_ERROR(IndexBeyondExpansion)
CFROW_DEFINE_ERROR(BadRange)
CFROW_DEFINE_ERROR(SingularPrefix)
CFROW_DEFINE_ERROR(NotSingularisable)
CFROW_DEFINE_ERROR(AdjacentPositions)
CFROW_DEFINE_ERROR(NotContractable)
CFROW_DEFINE_ERROR(BadPlan)
CFROW_DEFINE_ERROR(OutOfDomain)
CFROW_DEFINE_ERROR(ZeroInput)
CFROW_DEFINE_ERROR(CapExceeded)
CFROW_DEFINE_ERROR(BoundaryUndecidable)
CFROW_DEFINE_ERROR(SingularAtOrigin)
CFROW_DEFINE_ERROR(NullSetPoint)
CFROW_DEFINE_ERROR(FixedRay)
CFROW_DEFINE_ERROR(BackwardCapExceeded)
CFROW_DEFINE_ERROR(InvalidSingularisationArea)
CFROW_DEFINE_ERROR(NonIntegrable)
CFROW_DEFINE_ERROR(NotInducible)
CFROW_DEFINE_ERROR(UnsupportedRegion)
CFROW_DEFINE_ERROR(ParseError)

#undef CFROW_DEFINE_ERROR

// Raised when two constructions that must agree do not. Never expected.
class MismatchAt : public std::logic_error {
public:
    MismatchAt(long k, const std::string& what)
        : std::logic_error("MismatchAt(" + std::to_string(k) + "): " + what), k_(k) {}
    long index() const noexcept { return k_; }

private:
    long k_;
};

}  // namespace cfrow
