// The two families of spherically symmetric metrics h(r)^2 dr^2 + r^2 dOmega^2
// admitting only closed bounded orbits, their classified potentials, radial
// Green functions and intrinsic Kepler/oscillator potentials.
#ifndef BERTRAND_FAMILY_HPP
#define BERTRAND_FAMILY_HPP

#include <limits>
#include <string>
#include <vector>

namespace bertrand {

enum class FamilyKind { TypeI, TypeII };
enum class Branch { Plus, Minus };

struct BertrandFamily {
    FamilyKind kind = FamilyKind::TypeI;
    int n = 1;               // coprime positive integers; apsidal angle = pi*m/n
    int m = 1;
    double K = 0.0;
    double D = 0.0;          // Type II only
    double G = 0.0;          // additive potential constant
    Branch branch = Branch::Plus;
    std::string label;

    // Factories validate n,m >= 1, gcd(n,m) = 1; type_two additionally rejects
    // a Minus branch whose h^2 is nowhere positive.
    static BertrandFamily type_one(int n, int m, double K, double G = 0.0,
                                   std::string label = "");
    static BertrandFamily type_two(int n, int m, double K, double D, double G = 0.0,
                                   Branch branch = Branch::Plus, std::string label = "");
};

struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double r) const { return r > lo && r < hi; }
};

// Named special cases with extra closed forms (coordinate maps, mass functions).
enum class ProfilePreset { Generic, EuclideanKepler, CurvedKepler, FlatOscillator,
                           CurvedOscillator, Darboux };

class RadialProfile {
public:
    explicit RadialProfile(const BertrandFamily& family);

    const BertrandFamily& family() const { return fam_; }
    const std::vector<Interval>& domain() const { return domain_; }
    bool contains(double r) const;
    ProfilePreset preset() const { return preset_; }
    // preset parameter: curvature kappa for the curved presets, lambda for Darboux
    double preset_parameter() const { return preset_param_; }

    double h(double r) const;                 // metric profile, throws DomainError
    double h2(double r) const;
    double potential(double r) const;         // classified potential incl. G
    double potential_deriv(double r) const;

    // Antiderivative of h(r)/r^2 (radial Green function), closed form.
    double green_antiderivative(double r) const;
    // Definite integral from a to r; a may be +infinity when the tail converges.
    double green(double r, double a) const;
    // Same integral by adaptive quadrature (oracle path, no closed forms).
    double green_quadrature(double r, double a, double abs_tol = 1e-12) const;

private:
    BertrandFamily fam_;
    std::vector<Interval> domain_;
    ProfilePreset preset_ = ProfilePreset::Generic;
    double preset_param_ = 0.0;

    void detect_preset();
    double green_at_infinity() const;
};

RadialProfile make_profile(const BertrandFamily& family);

// Type II preset with n=2, m=1, K = D^2, D = -2*lambda:
// h(r) = (1 + sqrt(1+4 lambda r^2)) / (2 sqrt(1+4 lambda r^2)).
RadialProfile darboux_profile(double lambda);

// Scalar curvature at the origin of the N-dimensional Darboux space.
double darboux_curvature_origin(double lambda, int N);

// Intrinsic potentials built on the radial Green function u(r):
//   Kepler:     A * (int_a^r h/r'^2 dr' + B)
//   Oscillator: A * (int_a^r h/r'^2 dr' + B)^-2
struct IntrinsicPotentialSpec {
    enum class Kind { Kepler, Oscillator };
    Kind kind = Kind::Kepler;
    double A = 1.0;
    double B = 0.0;
    double anchor = 1.0;     // lower quadrature limit a
};

double intrinsic_potential(const RadialProfile& profile,
                           const IntrinsicPotentialSpec& spec, double r);

// Fit (A, B) of the matching intrinsic potential (Kepler for Type I,
// Oscillator for Type II) from the first and last grid point, then report the
// largest deviation from the classified potential over the whole grid.
struct IntrinsicMatchReport {
    IntrinsicPotentialSpec fitted;
    double max_residual = 0.0;
};

IntrinsicMatchReport intrinsic_match(const RadialProfile& profile,
                                     const std::vector<double>& grid);

} // namespace bertrand

#endif
