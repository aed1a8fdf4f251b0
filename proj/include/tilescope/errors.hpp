#pragma once

#include <stdexcept>
#include <string>

namespace tilescope {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define TILESCOPE_ERROR(Name)                                          \
    struct Name : Error {                                              \
        using Error::Error;                                            \
        const char* kind() const noexcept override { return #Name; }   \
    };

TILESCOPE_ERROR(GeometryViolation)
TILESCOPE_ERROR(NotSymmetric)
TILESCOPE_ERROR(RegionTooLarge)
TILESCOPE_ERROR(ParityError)
TILESCOPE_ERROR(PoleError)
TILESCOPE_ERROR(DivisionByZero)
TILESCOPE_ERROR(InternalDivisionError)
TILESCOPE_ERROR(DuplicateNode)
TILESCOPE_ERROR(VariantParameterError)
TILESCOPE_ERROR(HypothesisViolation)
TILESCOPE_ERROR(PrecisionError)

#undef TILESCOPE_ERROR

}  // namespace tilescope
