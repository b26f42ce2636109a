#pragma once

#include <stdexcept>
#include <string>

namespace summa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define SUMMA_ERROR_TYPE(Name)                                              \
    struct Name : Error {                                                   \
        using Error::Error;                                                 \
        const char* kind() const noexcept override { return #Name; }        \
    };

SUMMA_ERROR_TYPE(NonConvergence)
SUMMA_ERROR_TYPE(DomainError)
SUMMA_ERROR_TYPE(IndexError)
SUMMA_ERROR_TYPE(Overflow)
SUMMA_ERROR_TYPE(DegenerateInput)
SUMMA_ERROR_TYPE(UnknownKernel)
SUMMA_ERROR_TYPE(UnknownMethod)
SUMMA_ERROR_TYPE(ResonanceError)
SUMMA_ERROR_TYPE(ParseError)

#undef SUMMA_ERROR_TYPE

}  // namespace summa
