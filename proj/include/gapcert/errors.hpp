#pragma once

#include <stdexcept>
#include <string>

namespace gapcert {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GAPCERT_ERROR(Name)                                   \
    class Name : public Error {                               \
    public:                                                   \
        explicit Name(const std::string& what) : Error(what) {} \
    };

GAPCERT_ERROR(DivisionByZeroInterval)
GAPCERT_ERROR(Overflow)
GAPCERT_ERROR(DomainError)
GAPCERT_ERROR(BranchError)
GAPCERT_ERROR(EndpointSingularity)
GAPCERT_ERROR(Indeterminate)
GAPCERT_ERROR(NotPosDef)
GAPCERT_ERROR(PosDefFail)
GAPCERT_ERROR(ComplexRoots)
GAPCERT_ERROR(Inconclusive)
GAPCERT_ERROR(DepthExceeded)
GAPCERT_ERROR(DegenerateRow)
GAPCERT_ERROR(CheckFailed)

#undef GAPCERT_ERROR

}  // namespace gapcert
