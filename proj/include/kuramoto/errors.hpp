#pragma once

#include <stdexcept>
#include <string>

namespace kuramoto {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define KURAMOTO_ERROR_TYPE(Name)                                       \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what_arg) : Error(what_arg) {} \
    };

// Construction / validation of frequency laws.
KURAMOTO_ERROR_TYPE(AsymmetricDensity)
KURAMOTO_ERROR_TYPE(NonUnitMass)
KURAMOTO_ERROR_TYPE(UnboundedSupport)

// Density / CDF handling.
KURAMOTO_ERROR_TYPE(NegativeDensity)
KURAMOTO_ERROR_TYPE(EmptyLevelSet)
KURAMOTO_ERROR_TYPE(EmptyMeasure)

// Particle model.
KURAMOTO_ERROR_TYPE(UnstableStep)
KURAMOTO_ERROR_TYPE(CouplingTooWeak)
KURAMOTO_ERROR_TYPE(ZeroDensityAtOrigin)

// Quantile solver.
KURAMOTO_ERROR_TYPE(MonotonicityLoss)
KURAMOTO_ERROR_TYPE(SupportEscape)

// Finite-volume solver.
KURAMOTO_ERROR_TYPE(CflViolation)

// Metrics.
KURAMOTO_ERROR_TYPE(LatticeMismatch)
KURAMOTO_ERROR_TYPE(UnequalSupport)
KURAMOTO_ERROR_TYPE(MeanNotZero)
KURAMOTO_ERROR_TYPE(RangeViolation)
KURAMOTO_ERROR_TYPE(NonPositiveValues)

// Harness.
KURAMOTO_ERROR_TYPE(PreconditionViolated)

#undef KURAMOTO_ERROR_TYPE

} // namespace kuramoto
