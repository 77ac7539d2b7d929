#pragma once

#include <stdexcept>
#include <string>

namespace omsq {

/// Base class for all simulation errors. CLI maps these to exit code 2,
/// config problems (ConfigError) to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define OMSQ_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& msg) : Error(msg) {}          \
    }

// parameter validation
OMSQ_DEFINE_ERROR(NonPositiveRate);
OMSQ_DEFINE_ERROR(NegativeOccupancy);

// integrators
OMSQ_DEFINE_ERROR(StepTooLarge);
OMSQ_DEFINE_ERROR(InsufficientSpan);
OMSQ_DEFINE_ERROR(NonFiniteState);

// steady-state / stability
OMSQ_DEFINE_ERROR(UnstableDrift);

// adiabatic solution
OMSQ_DEFINE_ERROR(SingularSystem);
OMSQ_DEFINE_ERROR(DegenerateDenominator);

// spectral solution
OMSQ_DEFINE_ERROR(SingularResolvent);
OMSQ_DEFINE_ERROR(ToleranceNotMet);

// derived observables
OMSQ_DEFINE_ERROR(NonPositiveVariance);
OMSQ_DEFINE_ERROR(SingularCovariance);
OMSQ_DEFINE_ERROR(IsotropicState);
OMSQ_DEFINE_ERROR(ComplexRoot);

// sweeps and configuration
OMSQ_DEFINE_ERROR(NoStablePoints);
OMSQ_DEFINE_ERROR(ConfigError);

#undef OMSQ_DEFINE_ERROR

} // namespace omsq
