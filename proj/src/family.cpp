#include "bertrand/family.hpp"
#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bertrand {

namespace {

constexpr double kScanLo = 1e-9;
constexpr double kScanHi = 1e9;
constexpr int kScanPoints = 600;

// Type II building blocks. W is the discriminant under the square root,
// S the branch-dependent factor 1 - D r^2 +/- sqrt(W).
struct TypeTwoParts {
    double W;
    double S;
    bool valid;              // W > 0 and S > 0
};

// (1 - D r^2)^2 - K r^4 in the expanded form 1 - 2 D r^2 + (D^2 - K) r^4;
// the squared form cancels catastrophically at large r when K is close to
// D^2 (the Darboux subfamily has K = D^2 exactly)
double discriminant(const BertrandFamily& f, double r) {
    const double r2 = r * r;
    return 1.0 - 2.0 * f.D * r2 + (f.D * f.D - f.K) * r2 * r2;
}

TypeTwoParts type_two_parts(const BertrandFamily& f, double r) {
    TypeTwoParts p{};
    const double r2 = r * r;
    const double a = 1.0 - f.D * r2;
    p.W = discriminant(f, r);
    if (p.W <= 0.0) {
        p.valid = false;
        return p;
    }
    const double sw = std::sqrt(p.W);
    if (f.branch == Branch::Plus) {
        // a + sw cancels when a < 0; rewrite through a^2 - W = K r^4
        p.S = (a >= 0.0) ? a + sw : -f.K * r2 * r2 / (sw - a);
    } else {
        p.S = (a > 0.0) ? f.K * r2 * r2 / (a + sw) : a - sw;
    }
    p.valid = p.S > 0.0;
    return p;
}

// d/dr of W and S (direct forms; the Minus branch uses the quotient form of
// S = K r^4 / S_plus where a > 0 to avoid cancellation).
double type_two_S_deriv(const BertrandFamily& f, double r) {
    const double r2 = r * r;
    const double a = 1.0 - f.D * r2;
    const double W = discriminant(f, r);
    const double sw = std::sqrt(W);
    const double Wp = -4.0 * r * (f.D - (f.D * f.D - f.K) * r2);
    if (f.branch == Branch::Plus)
        return -2.0 * f.D * r + 0.5 * Wp / sw;
    if (a > 0.0) {
        const double Sp = a + sw;
        const double Spd = -2.0 * f.D * r + 0.5 * Wp / sw;
        return (4.0 * f.K * r * r2 * Sp - f.K * r2 * r2 * Spd) / (Sp * Sp);
    }
    return -2.0 * f.D * r - 0.5 * Wp / sw;
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

} // namespace

BertrandFamily BertrandFamily::type_one(int n, int m, double K, double G,
                                        std::string label) {
    if (n < 1 || m < 1)
        throw DomainError("family: n and m must be positive integers");
    if (gcd_int(n, m) != 1)
        throw DomainError("family: n and m must be coprime");
    BertrandFamily f;
    f.kind = FamilyKind::TypeI;
    f.n = n;
    f.m = m;
    f.K = K;
    f.G = G;
    f.label = label.empty() ? "type1" : std::move(label);
    return f;
}

BertrandFamily BertrandFamily::type_two(int n, int m, double K, double D, double G,
                                        Branch branch, std::string label) {
    if (n < 1 || m < 1)
        throw DomainError("family: n and m must be positive integers");
    if (gcd_int(n, m) != 1)
        throw DomainError("family: n and m must be coprime");
    BertrandFamily f;
    f.kind = FamilyKind::TypeII;
    f.n = n;
    f.m = m;
    f.K = K;
    f.D = D;
    f.G = G;
    f.branch = branch;
    f.label = label.empty() ? "type2" : std::move(label);
    if (branch == Branch::Minus) {
        // fail fast: h^2 > 0 requires S_minus > 0 somewhere, i.e. K > 0
        bool positive_somewhere = false;
        for (int i = 0; i <= kScanPoints && !positive_somewhere; ++i) {
            const double r = kScanLo * std::pow(kScanHi / kScanLo,
                                                static_cast<double>(i) / kScanPoints);
            positive_somewhere = type_two_parts(f, r).valid;
        }
        if (!positive_somewhere)
            throw DomainError("family: Minus branch has h^2 <= 0 everywhere");
    }
    return f;
}

RadialProfile::RadialProfile(const BertrandFamily& family) : fam_(family) {
    auto indicator = [&](double r) -> double {
        if (fam_.kind == FamilyKind::TypeI)
            return (1.0 + fam_.K * r * r > 0.0) ? 1.0 : -1.0;
        return type_two_parts(fam_, r).valid ? 1.0 : -1.0;
    };
    auto brackets = sign_change_brackets(indicator, kScanLo, kScanHi, kScanPoints, true);
    std::vector<double> bounds{kScanLo};
    for (auto [a, b] : brackets)
        bounds.push_back(brent(indicator, a, b, 0.0, 1e-14));
    bounds.push_back(kScanHi);

    // classify each segment at its geometric midpoint; validity at the scan
    // ends is extended to 0 and +infinity respectively
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (indicator(std::sqrt(bounds[i] * bounds[i + 1])) <= 0.0)
            continue;
        Interval iv;
        iv.lo = (i == 0) ? 0.0 : bounds[i];
        iv.hi = (i + 2 == bounds.size()) ? std::numeric_limits<double>::infinity()
                                         : bounds[i + 1];
        domain_.push_back(iv);
    }
    if (domain_.empty())
        throw DomainError("profile: h^2 is nowhere positive");
    detect_preset();
}

void RadialProfile::detect_preset() {
    const auto& f = fam_;
    if (f.kind == FamilyKind::TypeI) {
        if (f.n == 1 && f.m == 1) {
            preset_ = (f.K == 0.0) ? ProfilePreset::EuclideanKepler : ProfilePreset::CurvedKepler;
            preset_param_ = -f.K;   // sectional curvature kappa
        }
        return;
    }
    if (f.n == 2 && f.m == 1 && f.branch == Branch::Plus) {
        if (f.K == f.D * f.D) {
            preset_ = (f.D == 0.0) ? ProfilePreset::FlatOscillator : ProfilePreset::Darboux;
            preset_param_ = -0.5 * f.D;    // lambda
            return;
        }
        if (f.K == 0.0) {
            preset_ = ProfilePreset::CurvedOscillator;
            preset_param_ = f.D;           // kappa
            return;
        }
    }
}

bool RadialProfile::contains(double r) const {
    if (!(r > 0.0) || !std::isfinite(r))
        return false;
    for (const auto& iv : domain_)
        if (iv.contains(r))
            return true;
    return false;
}

double RadialProfile::h2(double r) const {
    if (!contains(r))
        throw DomainError("profile: r outside validity domain");
    if (fam_.kind == FamilyKind::TypeI) {
        const double d = 1.0 + fam_.K * r * r;
        if (d <= 0.0)
            throw DomainError("profile: 1 + K r^2 vanished");
        return sq(static_cast<double>(fam_.m) / fam_.n) / d;
    }
    const auto p = type_two_parts(fam_, r);
    if (!p.valid)
        throw DomainError("profile: discriminant vanished");
    return 2.0 * sq(static_cast<double>(fam_.m)) * p.S / (sq(static_cast<double>(fam_.n)) * p.W);
}

double RadialProfile::h(double r) const { return std::sqrt(h2(r)); }

double RadialProfile::potential(double r) const {
    if (!contains(r))
        throw DomainError("profile: r outside validity domain");
    if (fam_.kind == FamilyKind::TypeI)
        return std::sqrt(1.0 + fam_.K * r * r) / r + fam_.G;
    const auto p = type_two_parts(fam_, r);
    if (!p.valid)
        throw DomainError("profile: discriminant vanished");
    const double term = r * r / p.S;
    return (fam_.branch == Branch::Plus) ? fam_.G - term : fam_.G + term;
}

double RadialProfile::potential_deriv(double r) const {
    if (!contains(r))
        throw DomainError("profile: r outside validity domain");
    if (fam_.kind == FamilyKind::TypeI)
        return -1.0 / (r * r * std::sqrt(1.0 + fam_.K * r * r));
    const auto p = type_two_parts(fam_, r);
    const double Sd = type_two_S_deriv(fam_, r);
    const double term = (2.0 * r * p.S - r * r * Sd) / (p.S * p.S);
    return (fam_.branch == Branch::Plus) ? -term : term;
}

double RadialProfile::green_antiderivative(double r) const {
    if (!contains(r))
        throw DomainError("profile: r outside validity domain");
    if (fam_.kind == FamilyKind::TypeI)
        return -(static_cast<double>(fam_.m) / fam_.n) * std::sqrt(1.0 + fam_.K * r * r) / r;
    const auto p = type_two_parts(fam_, r);
    const double mag = (static_cast<double>(fam_.m) * std::sqrt(2.0) / fam_.n) * std::sqrt(p.S) / r;
    return (fam_.branch == Branch::Plus) ? -mag : mag;
}

double RadialProfile::green_at_infinity() const {
    const auto& f = fam_;
    bool unbounded = false;
    for (const auto& iv : domain_)
        unbounded |= std::isinf(iv.hi);
    if (!unbounded)
        throw DomainError("green: domain is bounded, no limit at infinity");
    if (f.kind == FamilyKind::TypeI)
        return -(static_cast<double>(f.m) / f.n) * std::sqrt(f.K);
    // S/r^2 -> -D + sqrt(D^2-K) (Plus) or -D - sqrt(D^2-K) (Minus)
    const double disc = f.D * f.D - f.K;
    if (disc < 0.0)
        throw DomainError("green: no limit at infinity");
    const double s = (f.branch == Branch::Plus) ? -f.D + std::sqrt(disc)
                                                : -f.D - std::sqrt(disc);
    if (s < 0.0)
        throw DomainError("green: no limit at infinity");
    const double mag = (static_cast<double>(f.m) * std::sqrt(2.0) / f.n) * std::sqrt(s);
    return (f.branch == Branch::Plus) ? -mag : mag;
}

double RadialProfile::green(double r, double a) const {
    const double ur = green_antiderivative(r);
    const double ua = std::isinf(a) ? green_at_infinity() : green_antiderivative(a);
    return ur - ua;
}

double RadialProfile::green_quadrature(double r, double a, double abs_tol) const {
    auto f = [this](double x) { return h(x) / (x * x); };
    QuadratureOptions opt;
    opt.abs_tol = abs_tol;
    if (std::isinf(a)) {
        for (const auto& iv : domain_)
            if (std::isinf(iv.hi) && iv.contains(r))
                return -integrate_to_infinity(f, r, opt);
        throw DomainError("green: domain is bounded, no limit at infinity");
    }
    return integrate(f, a, r, opt);
}

RadialProfile make_profile(const BertrandFamily& family) { return RadialProfile(family); }

RadialProfile darboux_profile(double lambda) {
    const double D = -2.0 * lambda;
    return RadialProfile(BertrandFamily::type_two(2, 1, D * D, D, 0.0, Branch::Plus,
                                                  "darboux"));
}

double darboux_curvature_origin(double lambda, int N) {
    if (N < 2)
        throw ConfigError("darboux_curvature_origin: N must be >= 2");
    return -2.0 * lambda * N * (N - 1);
}

double intrinsic_potential(const RadialProfile& profile,
                           const IntrinsicPotentialSpec& spec, double r) {
    const double g = profile.green(r, spec.anchor) + spec.B;
    if (spec.kind == IntrinsicPotentialSpec::Kind::Kepler)
        return spec.A * g;
    if (std::abs(g) < 1e-300)
        throw SingularityError("intrinsic potential: oscillator denominator vanished");
    return spec.A / (g * g);
}

IntrinsicMatchReport intrinsic_match(const RadialProfile& profile,
                                     const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw FitError("intrinsic_match: need at least two grid radii");
    const double r1 = grid.front(), r2 = grid.back();
    const double g1 = profile.green(r1, 1.0), g2 = profile.green(r2, 1.0);
    if (g1 == g2)
        throw FitError("intrinsic_match: coincident Green values");

    IntrinsicPotentialSpec spec;
    spec.anchor = 1.0;
    if (profile.family().kind == FamilyKind::TypeI) {
        spec.kind = IntrinsicPotentialSpec::Kind::Kepler;
        const double V1 = profile.potential(r1), V2 = profile.potential(r2);
        spec.A = (V2 - V1) / (g2 - g1);
        if (spec.A == 0.0)
            throw FitError("intrinsic_match: degenerate (constant) potential");
        spec.B = (V1 - spec.A * g1) / spec.A;
    } else {
        spec.kind = IntrinsicPotentialSpec::Kind::Oscillator;
        // model V - G = A (g + B)^-2, linear in 1/sqrt|V - G|
        const double P1 = profile.potential(r1) - profile.family().G;
        const double P2 = profile.potential(r2) - profile.family().G;
        if (P1 == 0.0 || P2 == 0.0 || (P1 > 0) != (P2 > 0))
            throw FitError("intrinsic_match: potential changes sign across the fit points");
        const double s = (P1 > 0) ? 1.0 : -1.0;
        const double y1 = 1.0 / std::sqrt(std::abs(P1));
        const double y2 = 1.0 / std::sqrt(std::abs(P2));
        const double alpha = (y2 - y1) / (g2 - g1);
        if (alpha == 0.0)
            throw FitError("intrinsic_match: degenerate oscillator fit");
        spec.A = s / (alpha * alpha);
        spec.B = (y1 - alpha * g1) / alpha;
    }

    IntrinsicMatchReport report;
    report.fitted = spec;
    const double G = (profile.family().kind == FamilyKind::TypeI) ? 0.0 : profile.family().G;
    for (double r : grid) {
        const double model = intrinsic_potential(profile, spec, r) + G;
        report.max_residual = std::max(report.max_residual,
                                       std::abs(profile.potential(r) - model));
    }
    return report;
}

} // namespace bertrand
