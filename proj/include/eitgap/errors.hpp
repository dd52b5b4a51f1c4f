#ifndef EITGAP_ERRORS_HPP
#define EITGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eitgap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DenominatorUnderflow : Error {
    using Error::Error;
};
struct NonPositiveLength : Error {
    using Error::Error;
};
struct GeometryInfeasible : Error {
    using Error::Error;
};
struct MatrixOverflow : Error {
    using Error::Error;
};
struct NonConvergent : Error {
    using Error::Error;
};
struct BranchAmbiguity : Error {
    using Error::Error;
};
struct NoGapDetected : Error {
    using Error::Error;
};
struct DerivativeNonConvergent : Error {
    using Error::Error;
};
struct InvalidSolitonRegime : Error {
    using Error::Error;
};
struct InsideGap : Error {
    using Error::Error;
};
struct CflViolation : Error {
    using Error::Error;
};
struct ConfigInvalid : Error {
    using Error::Error;
};
struct InvalidParams : Error {
    using Error::Error;
};

} // namespace eitgap

#endif
