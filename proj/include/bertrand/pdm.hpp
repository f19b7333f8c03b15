// Position-dependent-mass form H = p^2/(2 M(|q|)) + V(|q|) of the profile
// Hamiltonians, with the closed-form presets and a quadrature-backed generic
// Type II construction.
#ifndef BERTRAND_PDM_HPP
#define BERTRAND_PDM_HPP

#include "bertrand/coordinate_map.hpp"
#include "bertrand/family.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>

namespace bertrand {

class PdmSystem {
public:
    virtual ~PdmSystem() = default;

    int dimension() const { return dim_; }
    double m0() const { return m0_; }

    virtual double mass(double rho) const = 0;
    virtual double mass_d1(double rho) const = 0;
    virtual double mass_d2(double rho) const = 0;
    virtual double potential(double rho) const = 0;
    virtual double potential_d1(double rho) const = 0;
    virtual double potential_d2(double rho) const = 0;

    const Interval& rho_domain() const { return dom_; }
    bool in_domain(double rho) const { return dom_.contains(rho); }
    void require_in_domain(double rho) const;

    virtual std::string label() const = 0;
    virtual std::map<std::string, double> parameters() const = 0;

    // r-chart companions where a coordinate map exists (presets and
    // quadrature-backed systems); null otherwise.
    virtual const CoordinateMap* map() const { return nullptr; }

    double hamiltonian(std::span<const double> q, std::span<const double> p) const;

protected:
    PdmSystem(int dim, double m0, Interval dom) : dim_(dim), m0_(m0), dom_(dom) {}

    int dim_;
    double m0_;
    Interval dom_;
};

using SystemPtr = std::shared_ptr<const PdmSystem>;

// M = 1 + lambda rho^2, V = omega^2 rho^2 / (2 (1 + lambda rho^2)).
// lambda < 0 restricts to the interior ball rho < 1/sqrt(-lambda).
SystemPtr darboux_system(int N, double lambda, double omega, double m0 = 1.0);

// Exterior region for lambda < 0: M = |lambda| rho^2 - 1 on rho > 1/sqrt(-lambda),
// V = omega^2 rho^2 / (2 (|lambda| rho^2 - 1)) (an infinite barrier).
SystemPtr darboux_exterior_system(int N, double lambda, double omega, double m0 = 1.0);

// Flat oscillator = Darboux at lambda = 0.
SystemPtr flat_oscillator_system(int N, double omega, double m0 = 1.0);

// Generic Type I: M = 4 / ((rho^-v - K rho^v)^2 rho^2), v = n/m,
// V = A1 (rho^-v + K rho^v) / 2.
SystemPtr type_one_system(int N, int n, int m, double K, double A1, double m0 = 1.0);

// Constant-curvature Kepler in Poincare coordinates (Type I with n=m=1, K=-kappa):
// M = 4/(1+kappa rho^2)^2, V = A1 (1-kappa rho^2)/(2 rho).
SystemPtr kappa_kepler_system(int N, double kappa, double A1, double m0 = 1.0);

// Constant-curvature oscillator in Poincare coordinates:
// M = 4/(1+kappa rho^2)^2, V = 2 A2 rho^2/(1-kappa rho^2)^2.
SystemPtr kappa_oscillator_system(int N, double kappa, double A2, double m0 = 1.0);

// Generic Type II backed by the quadrature coordinate map; the potential is
// the classified profile potential transported to the rho chart.
SystemPtr type_two_quadrature_system(int N, const BertrandFamily& family, double m0 = 1.0);

inline double mass_of_rho(const PdmSystem& sys, double rho) {
    sys.require_in_domain(rho);
    return sys.mass(rho);
}

double pdm_hamiltonian(const PdmSystem& sys, std::span<const double> q,
                       std::span<const double> p);

} // namespace bertrand

#endif
