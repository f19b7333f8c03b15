// Small numerical kernels: adaptive Gauss-Kronrod quadrature, Brent root
// finding, bracket scanning and finite differences.
#ifndef BERTRAND_NUMERICS_HPP
#define BERTRAND_NUMERICS_HPP

#include <functional>
#include <utility>
#include <vector>

namespace bertrand {

inline double sq(double x) { return x * x; }

using Fn1 = std::function<double(double)>;

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    int max_depth = 48;
};

// Adaptive 7-15 Gauss-Kronrod on [a, b] (a > b allowed, sign flips).
// Throws QuadratureError if the error estimate cannot be pushed below
// max(abs_tol, rel_tol*|result|).
double integrate(const Fn1& f, double a, double b, const QuadratureOptions& opt = {});

// Integral over [a, +inf), mapped to [0, 1) through r = a + t/(1-t).
double integrate_to_infinity(const Fn1& f, double a, const QuadratureOptions& opt = {});

// Brent-Dekker root refinement on a bracketing interval [a, b] with f(a)f(b) <= 0.
double brent(const Fn1& f, double a, double b, double tol_abs = 0.0, double tol_rel = 1e-14);

// Scan [lo, hi] on a log- or linearly-spaced grid and return every bracket
// where f changes sign.
std::vector<std::pair<double, double>> sign_change_brackets(
    const Fn1& f, double lo, double hi, int points, bool log_spaced);

// Five-point central first derivative, O(h^4).
double deriv_central(const Fn1& f, double x, double h);

} // namespace bertrand

#endif
