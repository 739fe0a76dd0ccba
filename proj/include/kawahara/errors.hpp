#pragma once

#include <stdexcept>
#include <string>

namespace kawahara {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Mismatched sizes, wrong domain tag, grids that do not fit together.
struct StructuralError : Error {
    using Error::Error;
};

/// Quadrature or iteration failed to reach its tolerance.
struct NumericalError : Error {
    double achieved;
    NumericalError(const std::string& what, double achieved_tol)
        : Error(what), achieved(achieved_tol) {}
};

struct ConfigurationError : Error {
    using Error::Error;
};

/// Lookup outside a KernelTable. Carries the range that would be needed.
struct TableRangeError : Error {
    double need_lo, need_hi;
    TableRangeError(const std::string& what, double lo, double hi)
        : Error(what), need_lo(lo), need_hi(hi) {}
};

struct NonConvergence : Error {
    using Error::Error;
};

}  // namespace kawahara
