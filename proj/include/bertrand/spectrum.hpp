// Discrete spectrum of the quantum Hamiltonian
//   H = (-hbar^2 Lap + omega^2 q^2) / (2 (1 + lambda q^2)),  lambda > 0:
// closed-form levels with oscillator degeneracies, plus an independent
// finite-difference generalized eigensolver for the reduced radial problem.
#ifndef BERTRAND_SPECTRUM_HPP
#define BERTRAND_SPECTRUM_HPP

#include <cstdint>
#include <vector>

namespace bertrand {

struct QuantumParams {
    int N = 3;
    double hbar = 1.0;
    double lambda = 0.5;
    double omega = 1.0;
};

// E_n = -hbar^2 lambda nu^2 + hbar nu sqrt(hbar^2 lambda^2 nu^2 + omega^2),
// nu = n + N/2, evaluated through the rationalized cancellation-free form
// hbar nu omega^2 / (sqrt(...) + hbar lambda nu). Throws RegimeError for
// lambda <= 0.
double analytic_level(const QuantumParams& params, int n);

// Same level through the second algebraic route
// omega^2 / (lambda (1 + sqrt(1 + omega^2/(hbar lambda nu)^2))).
double analytic_level_alt(const QuantumParams& params, int n);

// |E^2 - hbar^2 (omega^2 - 2 lambda E) nu^2| / max(E^2, 1), the implicit
// quadratic identity satisfied by the levels.
double quadratic_identity_residual(const QuantumParams& params, int n);

// omega^2 / (2 lambda): accumulation point of the levels and bottom of the
// continuous spectrum.
double continuum_bottom(const QuantumParams& params);

// Degeneracy of level n: binomial(n+N-1, N-1), as for the flat isotropic
// oscillator.
std::uint64_t degeneracy(int N, int n);

// Dimension of degree-l spherical harmonics in N variables.
std::uint64_t harmonic_dimension(int N, int l);

// Oracle: count (k, l) with 2k + l = n weighted by harmonic_dimension.
std::uint64_t degeneracy_by_count(int N, int n);

struct RadialGrid {
    double rho_max = 0.0;
    int points = 0;
    int l = 0;
};

// Domain and resolution policy: the box covers the classical turning radius
// of the highest requested level plus nine asymptotic decay lengths; the
// resolution keeps the local phase per step small.
RadialGrid default_grid(const QuantumParams& params, int n_max, int l);

// Lowest `count` eigenvalues of the reduced radial problem in angular sector
// l, discretized in self-adjoint conservative form on a cell-centered grid
// (weight matrix diagonal positive), solved by Sturm-sequence bisection.
// Accepts lambda >= 0; lambda < 0 raises RegimeError.
std::vector<double> radial_solve(const QuantumParams& params, const RadialGrid& grid,
                                 int count);

struct RichardsonLevel {
    double value = 0.0;        // extrapolated eigenvalue
    double correction = 0.0;   // |extrapolated - fine-grid| residual estimate
};

// Solve on the grid and on its half-step refinement, then eliminate the
// second-order error term.
std::vector<RichardsonLevel> radial_solve_richardson(const QuantumParams& params,
                                                     const RadialGrid& grid, int count);

// Max elementwise asymmetry of the weighted operator matrix B * (B^-1 A).
double symmetry_check(const QuantumParams& params, const RadialGrid& grid);

// |<u, H v>_B - <H u, v>_B| / scale for random vectors, matrix-free.
double bilinear_symmetry_residual(const QuantumParams& params, const RadialGrid& grid,
                                  std::uint64_t seed);

struct SpectrumLevel {
    int n = 0;
    double analytic = 0.0;
    double numeric = 0.0;
    std::uint64_t expected_degeneracy = 0;
    std::uint64_t found_degeneracy = 0;
};

struct SpectrumResult {
    QuantumParams params;
    double continuum = 0.0;    // +inf when lambda == 0
    std::vector<SpectrumLevel> levels;
};

struct AssemblyPolicy {
    double level_tol = 1e-6;      // relative numeric-vs-analytic tolerance
    double cluster_tol = 1e-8;    // relative guard against analytic-level collisions
    int threads = 0;              // 0: hardware concurrency
    bool verify = true;           // throw LevelMismatch / DegeneracyMismatch
};

// Merge radial_solve_richardson over l = 0..n_max, assign eigenvalues to
// principal quantum numbers, and verify values and multiplicities.
SpectrumResult assemble_spectrum(const QuantumParams& params, int n_max,
                                 const AssemblyPolicy& policy = {});

} // namespace bertrand

#endif
