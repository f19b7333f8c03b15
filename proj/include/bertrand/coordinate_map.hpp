// Conformal change of radial variable r <-> rho (rho = |q|) that turns a
// profile metric into f(|q|)^2 dq^2, with d(ln rho)/dr = h(r)/r.
#ifndef BERTRAND_COORDINATE_MAP_HPP
#define BERTRAND_COORDINATE_MAP_HPP

#include "bertrand/family.hpp"

#include <memory>

namespace bertrand {

class CoordinateMap {
public:
    enum class Kind { ClosedForm, Quadrature };

    virtual ~CoordinateMap() = default;
    virtual double rho_of_r(double r) const = 0;
    virtual double r_of_rho(double rho) const = 0;
    virtual Kind kind() const = 0;

    const RadialProfile& profile() const { return profile_; }
    const Interval& r_domain() const { return r_dom_; }
    const Interval& rho_domain() const { return rho_dom_; }

protected:
    explicit CoordinateMap(const RadialProfile& profile);

    RadialProfile profile_;
    Interval r_dom_;       // primary validity interval (closure touches 0)
    Interval rho_dom_;
};

// Closed-form pair for Type I:
//   rho = (r / (1 + sqrt(1+K r^2)))^{m/n},   r = 2 / (rho^{-n/m} - K rho^{n/m}).
std::unique_ptr<CoordinateMap> make_type_one_map(const RadialProfile& profile);

// Generic Type II map rho = exp{ r u(r) - int^r u } built by quadrature, with
// the additive constant fixed so that rho ~ r^c as r -> 0 when c = h(0+) is
// finite, and rho(r0) = 1 at a reference radius otherwise.
std::unique_ptr<CoordinateMap> make_type_two_quadrature_map(const RadialProfile& profile);

// Preset-aware dispatch: closed forms for Type I, the constant-curvature
// oscillator chart and the Darboux profile; quadrature otherwise.
std::unique_ptr<CoordinateMap> make_map(const RadialProfile& profile);

struct RelationResiduals {
    double roundtrip;        // |r - rho * f(rho)| with f = r_of_rho(rho)/rho
    double conformal;        // |f * drho/dr - h(r)|
    double logarithmic;      // |(drho/dr)/rho - h(r)/r|
};

// Central-difference check of the defining relations at one interior radius.
RelationResiduals check_relations(const CoordinateMap& map, double r);

} // namespace bertrand

#endif
