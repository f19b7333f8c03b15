// Radial-chart orbit analysis for PDM systems: circular orbits, turning
// points, apsidal angles and radial periods by endpoint-regularized
// quadrature, plus trajectory-based measurements.
#ifndef BERTRAND_ORBITS_HPP
#define BERTRAND_ORBITS_HPP

#include "bertrand/dynamics.hpp"
#include "bertrand/pdm.hpp"

#include <cstdint>

namespace bertrand {

// View of a PDM system in the chart where the metric is h(r)^2 dr^2 + r^2 dOmega^2:
// r = rho sqrt(M(rho)), h = 2M / (2M + rho M').
class RadialChart {
public:
    explicit RadialChart(const PdmSystem& sys) : sys_(sys) {}

    double r_of_rho(double rho) const;
    double rho_of_r(double r) const;
    double h_at_rho(double rho) const;

    // U(rho; L) = L^2/(2 M rho^2) + V(rho); same value as the r-chart
    // effective potential at r(rho)
    double effective_potential(double rho, double L) const;
    double effective_potential_deriv(double rho, double L) const;
    double effective_potential_deriv2(double rho, double L) const;

    const PdmSystem& system() const { return sys_; }

private:
    const PdmSystem& sys_;
};

struct CircularOrbit {
    double rho_c = 0.0;
    double r_c = 0.0;
    double energy = 0.0;
    bool stable = false;
};

// Stationary point of the effective potential at fixed angular momentum L.
CircularOrbit circular_orbit(const PdmSystem& sys, double L);

struct TurningPoints {
    double rho_min = 0.0, rho_max = 0.0;
    double r_min = 0.0, r_max = 0.0;
};

TurningPoints turning_points(const PdmSystem& sys, double E, double L);

// Azimuthal advance between pericenter and apocenter, by quadrature with the
// substitution rho = rho_min + (rho_max - rho_min) sin^2(theta) removing both
// inverse-square-root endpoints.
double apsidal_angle(const PdmSystem& sys, double E, double L);

// Time between successive pericenters.
double radial_period(const PdmSystem& sys, double E, double L);

// State at pericenter for given (E, L), placed in the q1-q2 plane.
PhaseState pericenter_state(const PdmSystem& sys, double E, double L, int N);

// Mean pericenter->apocenter (and reverse) azimuth sweep measured directly on
// an integrated trajectory; requires at least one full radial oscillation.
double apsidal_angle_from_trajectory(const Trajectory& traj);

struct OrbitSampleOptions {
    double q_box = 1.2;       // uniform component range [-q_box, q_box]
    double p_box = 0.8;
    double min_angular = 0.05;
    double domain_margin = 1e-3;
    int max_attempts = 100000;
};

// Uniform box sampling of bounded, noncircular initial conditions (rejects
// states outside the domain, too close to a singular radius, or unbound).
std::vector<PhaseState> sample_bounded_states(const PdmSystem& sys, int N,
                                              std::uint64_t seed, int count,
                                              const OrbitSampleOptions& opt = {});

struct OrbitAnalysis {
    double energy = 0.0;
    double angular_momentum = 0.0;
    double rho_min = 0.0, rho_max = 0.0;
    double r_min = 0.0, r_max = 0.0;
    double apsidal_quadrature = 0.0;
    double apsidal_trajectory = 0.0;
    double radial_period = 0.0;
    DriftReport drift;
};

} // namespace bertrand

#endif
