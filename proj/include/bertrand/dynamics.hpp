// Hamiltonian flow of PDM systems: analytic gradients, a symplectic implicit
// midpoint integrator with an embedded Dormand-Prince cross-check, the
// conserved quantities (angular blocks, Fradkin tensor, azimuthal unit
// vector), Poisson brackets and functional-independence ranks.
#ifndef BERTRAND_DYNAMICS_HPP
#define BERTRAND_DYNAMICS_HPP

#include "bertrand/pdm.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bertrand {

struct PhaseState {
    std::vector<double> q, p;

    PhaseState() = default;
    PhaseState(std::vector<double> q_, std::vector<double> p_)
        : q(std::move(q_)), p(std::move(p_)) {}
    int dim() const { return static_cast<int>(q.size()); }

    double radius() const;
    double kinetic_norm() const;           // |p|
    double radial_momentum_indicator() const;   // q . p
    double angular_momentum_norm() const;  // sqrt(sum L_ij^2)
};

struct Gradient {
    std::vector<double> dq, dp;
};

// Analytic partial derivatives of p^2/(2M(|q|)) + V(|q|).
Gradient hamiltonian_gradient(const PdmSystem& sys, const PhaseState& s);

struct Trajectory {
    struct Sample {
        double t;
        PhaseState state;
    };
    std::vector<Sample> samples;
    long steps = 0;
    long newton_iterations = 0;
    long rejected_steps = 0;
    double max_energy_drift = 0.0;   // relative to max(|H0|, 1e-30)
    bool drift_flagged = false;
};

struct MidpointConfig {
    double dt = 0.0;                  // required
    int sample_stride = 1;            // keep every k-th step
    double newton_tol = 1e-13;        // residual contract; iteration continues
                                      // to the machine floor when it can
    int max_newton_iterations = 50;
    double drift_budget = 1e-8;       // flags the trajectory, does not abort
};

// Fixed-step implicit midpoint with a full Newton solve per step (analytic
// Hessian). Throws StepFailure on Newton breakdown and DomainExit when the
// trajectory reaches the configuration-domain boundary.
Trajectory integrate_midpoint(const PdmSystem& sys, const PhaseState& s0,
                              double t_end, const MidpointConfig& cfg);

struct RkConfig {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    double initial_dt = 1e-3;
    int sample_stride = 1;
};

// Adaptive Dormand-Prince 5(4) cross-check integrator.
Trajectory integrate_rk45(const PdmSystem& sys, const PhaseState& s0,
                          double t_end, const RkConfig& cfg);

// Angular momentum blocks over the leading m (resp. trailing m) coordinates:
// sums of (q_i p_j - q_j p_i)^2. Throws IndexError outside 2 <= m <= N.
double angular_integral_leading(const PhaseState& s, int m);
double angular_integral_trailing(const PhaseState& s, int m);
std::pair<double, double> angular_integrals(const PhaseState& s, int m);

// Curved Fradkin tensor C_ij = p_i p_j - (2 lambda H - omega^2) q_i q_j of the
// Darboux oscillator (row-major N x N, symmetric by construction).
std::vector<double> fradkin_tensor(double lambda, double omega, const PhaseState& s);

// Darboux Hamiltonian value used inside the Fradkin tensor.
double darboux_hamiltonian_value(double lambda, double omega, const PhaseState& s);

// Unit vector a = cos(phi) q/rho + sin(phi)/(rho J) q x (q x p) preserved by
// flat radial Hamiltonians; phi is the continuous in-plane azimuth measured
// from a reference direction, J = |q x p|. N = 3 only.
std::array<double, 3> fradkin_unit_vector(const PhaseState& s, double phi);

// Classical Runge-Lenz vector p x L - mass * alpha * q/|q| for V = -alpha/|q|.
std::array<double, 3> runge_lenz(const PhaseState& s, double mass, double alpha);

// Phase-space observables with analytic gradients, for Poisson brackets,
// conservation monitoring and rank tests.
class PhaseFunction {
public:
    virtual ~PhaseFunction() = default;
    virtual std::string name() const = 0;
    virtual double value(const PhaseState& s) const = 0;
    virtual Gradient gradient(const PhaseState& s) const = 0;
};

std::unique_ptr<PhaseFunction> make_hamiltonian_function(SystemPtr sys);
std::unique_ptr<PhaseFunction> make_leading_angular_function(int m);
std::unique_ptr<PhaseFunction> make_trailing_angular_function(int m);
std::unique_ptr<PhaseFunction> make_fradkin_component_function(double lambda, double omega,
                                                               int i, int j);

// The standard full set {H, C^(2..N), C_(2..N-1), C_11} of 2N-1 functions.
std::vector<std::unique_ptr<PhaseFunction>> standard_invariant_set(SystemPtr sys,
                                                                   double lambda,
                                                                   double omega);

double poisson_bracket(const PhaseFunction& a, const PhaseFunction& b,
                       const PhaseState& s);

// Rank of the Jacobian of the given functions with respect to (q, p);
// singular values below threshold * sigma_max count as zero. Throws
// DegeneratePoint when any single gradient nearly vanishes.
int independence_rank(const std::vector<const PhaseFunction*>& fns,
                      const PhaseState& s, double threshold = 1e-9);

struct DriftEntry {
    std::string name;
    double initial = 0.0;
    double max_drift = 0.0;   // max |C(t)-C(0)| / max(|C(0)|, 1e-30)
};

struct DriftReport {
    std::vector<DriftEntry> entries;
    double worst = 0.0;
};

DriftReport conservation_report(const Trajectory& traj,
                                const std::vector<const PhaseFunction*>& fns);

// Unit-vector series along a flat-system trajectory, with the azimuth
// reference reset at each pericenter passage.
struct AxisSample {
    double t;
    std::array<double, 3> a;
};
std::vector<AxisSample> fradkin_axis_series(const Trajectory& traj);

} // namespace bertrand

#endif
