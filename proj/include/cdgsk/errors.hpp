#pragma once

#include <stdexcept>
#include <string>

namespace cdgsk {

// Invalid input (out-of-range parameters, malformed series). Maps to CLI exit code 2.
using ValidationError = std::invalid_argument;

// Base for every failure of a numerical procedure. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define CDGSK_NUMERICAL_ERROR(Name)                                            \
    class Name : public NumericalError {                                       \
    public:                                                                    \
        explicit Name(const std::string& what) : NumericalError(#Name, what) {} \
    };

CDGSK_NUMERICAL_ERROR(NonConvergence)
CDGSK_NUMERICAL_ERROR(SingularJacobian)
CDGSK_NUMERICAL_ERROR(EigenFailure)
CDGSK_NUMERICAL_ERROR(WrongRank)
CDGSK_NUMERICAL_ERROR(QuadratureStall)
CDGSK_NUMERICAL_ERROR(NotAPerturbation)
CDGSK_NUMERICAL_ERROR(DefectiveCluster)
CDGSK_NUMERICAL_ERROR(BlowUp)

#undef CDGSK_NUMERICAL_ERROR

} // namespace cdgsk
