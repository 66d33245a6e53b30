#pragma once

#include <stdexcept>
#include <string>

namespace octa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define OCTA_ERROR(Name)                                   \
    struct Name : Error {                                  \
        explicit Name(const std::string& what = #Name)     \
            : Error(what) {}                               \
    }

OCTA_ERROR(ParseError);
OCTA_ERROR(SingularHit);
OCTA_ERROR(ZeroDirection);
OCTA_ERROR(WrongSector);
OCTA_ERROR(NotReducible);
OCTA_ERROR(ParabolicFixedPoint);
OCTA_ERROR(OutOfRange);
OCTA_ERROR(OutOfDomain);
OCTA_ERROR(OutOfSection);
OCTA_ERROR(AmbiguousDiagram);
OCTA_ERROR(NotAdmissible);
OCTA_ERROR(DiagonalTouch);
OCTA_ERROR(InvalidPath);
OCTA_ERROR(TooCloseToVertex);

#undef OCTA_ERROR

}  // namespace octa
