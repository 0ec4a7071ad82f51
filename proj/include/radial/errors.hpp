#pragma once

#include <stdexcept>
#include <string>

namespace radial {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define RADIAL_ERROR(name)                  \
    struct name : Error {                   \
        using Error::Error;                 \
    }

RADIAL_ERROR(DomainError);
RADIAL_ERROR(EnvelopeError);
RADIAL_ERROR(InvalidQuantumNumbers);
RADIAL_ERROR(ClassificationError);
RADIAL_ERROR(FallingToCenter);
RADIAL_ERROR(UnsupportedExtension);
RADIAL_ERROR(DivergentIntegral);
RADIAL_ERROR(QuadratureError);
RADIAL_ERROR(ExtrapolationError);
RADIAL_ERROR(ExtrapolationFailure);
RADIAL_ERROR(IncompatibleStates);
RADIAL_ERROR(NotImplemented);
RADIAL_ERROR(DegenerateLeadingTerm);
RADIAL_ERROR(BracketingError);
RADIAL_ERROR(ContaminatedFit);
RADIAL_ERROR(ConfigError);
RADIAL_ERROR(IoError);

#undef RADIAL_ERROR

}  // namespace radial
