// Exception hierarchy shared by all modules.
#ifndef BERTRAND_ERRORS_HPP
#define BERTRAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bertrand {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// evaluation outside the validity domain of a metric, map or mass function
struct DomainError : Error { using Error::Error; };

// adaptive quadrature failed to reach the requested tolerance
struct QuadratureError : Error { using Error::Error; };

// a genuine singularity of an intrinsic potential (vanishing denominator)
struct SingularityError : Error { using Error::Error; };

// two-point fit system is singular
struct FitError : Error { using Error::Error; };

// Newton iteration of an implicit integration step did not converge
struct StepFailure : Error { using Error::Error; };

// trajectory reached the boundary of the configuration domain
struct DomainExit : Error {
    DomainExit(const std::string& msg, double when) : Error(msg), t(when) {}
    double t;
};

struct NoTurningPoints : Error { using Error::Error; };
struct NoCircularOrbit : Error { using Error::Error; };

// zero angular momentum: the azimuth-based unit vector is undefined
struct DegenerateOrbit : Error { using Error::Error; };

// a gradient vanishes where the independence rank is requested
struct DegeneratePoint : Error { using Error::Error; };

// operation requested outside the solved quantum regime (lambda <= 0)
struct RegimeError : Error { using Error::Error; };

struct ConvergenceError : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct DegeneracyMismatch : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };

// angular-integral block index outside 2..N
struct IndexError : Error { using Error::Error; };

// malformed CLI / config input
struct ConfigError : Error { using Error::Error; };

} // namespace bertrand

#endif
