#include "bertrand/coordinate_map.hpp"
#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace bertrand {

CoordinateMap::CoordinateMap(const RadialProfile& profile)
    : profile_(profile), r_dom_(profile.domain().front()) {}

namespace {

class TypeOneMap final : public CoordinateMap {
public:
    explicit TypeOneMap(const RadialProfile& p)
        : CoordinateMap(p),
          K_(p.family().K),
          exp_(static_cast<double>(p.family().m) / p.family().n) {
        rho_dom_.lo = 0.0;
        // K != 0 caps rho at |K|^{-m/(2n)}: the K > 0 image saturates there as
        // r -> inf, and K < 0 reaches it at the domain edge r = 1/sqrt(-K)
        rho_dom_.hi = (K_ == 0.0) ? std::numeric_limits<double>::infinity()
                                  : std::pow(std::abs(K_), -0.5 * exp_);
    }

    double rho_of_r(double r) const override {
        if (!r_dom_.contains(r))
            throw DomainError("map: r outside validity domain");
        return std::pow(r / (1.0 + std::sqrt(1.0 + K_ * r * r)), exp_);
    }

    double r_of_rho(double rho) const override {
        if (!rho_dom_.contains(rho))
            throw DomainError("map: rho outside validity domain");
        const double w = std::pow(rho, -1.0 / exp_) - K_ * std::pow(rho, 1.0 / exp_);
        if (w <= 0.0)
            throw DomainError("map: rho beyond the K > 0 cap");
        return 2.0 / w;
    }

    Kind kind() const override { return Kind::ClosedForm; }

private:
    double K_;
    double exp_;   // m/n
};

class DarbouxMap final : public CoordinateMap {
public:
    DarbouxMap(const RadialProfile& p, double lambda)
        : CoordinateMap(p), lam_(lambda) {
        rho_dom_.lo = 0.0;
        rho_dom_.hi = lam_ < 0.0 ? 1.0 / std::sqrt(2.0 * -lam_)
                                 : std::numeric_limits<double>::infinity();
    }

    double rho_of_r(double r) const override {
        if (!r_dom_.contains(r))
            throw DomainError("map: r outside validity domain");
        // rho^2 = (sqrt(1+4 lam r^2)-1)/(2 lam), cancellation-free
        return r * std::sqrt(2.0 / (1.0 + std::sqrt(1.0 + 4.0 * lam_ * r * r)));
    }

    double r_of_rho(double rho) const override {
        if (!rho_dom_.contains(rho))
            throw DomainError("map: rho outside validity domain");
        return rho * std::sqrt(1.0 + lam_ * rho * rho);
    }

    Kind kind() const override { return Kind::ClosedForm; }

private:
    double lam_;
};

// Constant-curvature oscillator chart in Poincare coordinates (the gauge in
// which the mass is 4/(1+kappa rho^2)^2; rho differs by a factor 2 from the
// rho ~ r calibration of the generic quadrature map).
class PoincareOscillatorMap final : public CoordinateMap {
public:
    PoincareOscillatorMap(const RadialProfile& p, double kappa)
        : CoordinateMap(p), kap_(kappa) {
        rho_dom_.lo = 0.0;
        rho_dom_.hi = kap_ == 0.0 ? std::numeric_limits<double>::infinity()
                                  : 1.0 / std::sqrt(std::abs(kap_));
    }

    double rho_of_r(double r) const override {
        if (!r_dom_.contains(r))
            throw DomainError("map: r outside validity domain");
        return r / (1.0 + std::sqrt(1.0 - kap_ * r * r));
    }

    double r_of_rho(double rho) const override {
        if (!rho_dom_.contains(rho))
            throw DomainError("map: rho outside validity domain");
        return 2.0 * rho / (1.0 + kap_ * rho * rho);
    }

    Kind kind() const override { return Kind::ClosedForm; }

private:
    double kap_;
};

class QuadratureMap final : public CoordinateMap {
public:
    explicit QuadratureMap(const RadialProfile& p) : CoordinateMap(p) {
        const auto& f = profile_.family();
        if (f.kind != FamilyKind::TypeII)
            throw ConfigError("quadrature map: Type II families only");
        plus_ = f.branch == Branch::Plus;
        c_ = plus_ ? 2.0 * f.m / f.n : 0.0;   // h(0+) for the Plus branch
        if (!plus_) {
            // reference calibration: rho(r0) = 1
            if (r_dom_.contains(1.0))
                r0_ = 1.0;
            else if (std::isinf(r_dom_.hi))
                r0_ = std::max(1.0, 2.0 * r_dom_.lo);
            else
                r0_ = 0.5 * (r_dom_.lo + r_dom_.hi);
            u0_ = profile_.green_antiderivative(r0_);
        }
        rho_dom_.lo = 0.0;
        rho_dom_.hi = std::numeric_limits<double>::infinity();
        if (!std::isinf(r_dom_.hi)) {
            // probe the image near the domain edge, backing off if the
            // integrand's edge singularity defeats the quadrature budget
            for (double back : {1e-9, 1e-6, 1e-3}) {
                try {
                    rho_dom_.hi = std::exp(log_rho(r_dom_.hi * (1.0 - back)));
                    break;
                } catch (const QuadratureError&) {
                }
            }
        }
    }

    double rho_of_r(double r) const override { return std::exp(log_rho(r)); }

    double r_of_rho(double rho) const override {
        if (!(rho > 0.0))
            throw DomainError("map: rho must be positive");
        const double target = std::log(rho);
        // bracket in r: log_rho is strictly increasing
        double lo = std::max(r_dom_.lo, 1e-12);
        double hi = std::isinf(r_dom_.hi) ? 1.0 : r_dom_.hi * (1.0 - 1e-12);
        if (std::isinf(r_dom_.hi)) {
            while (log_rho(hi) < target && hi < 1e14)
                hi *= 2.0;
        }
        while (log_rho(lo) > target && lo > 1e-300)
            lo *= 0.5;
        auto g = [&](double r) { return log_rho(r) - target; };
        if (g(lo) > 0.0 || g(hi) < 0.0)
            throw DomainError("map: rho outside the image of the domain");
        return brent(g, lo, hi, 0.0, 1e-12);
    }

    Kind kind() const override { return Kind::Quadrature; }

private:
    bool plus_ = true;
    double c_ = 0.0;
    double r0_ = 1.0;
    double u0_ = 0.0;

    // u(t) + c/t, regular at t = 0 (Plus branch): the cancelling 1/t poles are
    // removed through 2 - S = (4 D t^2 + K t^4) / (1 + D t^2 + sqrt(W)).
    double regularized_u(double t) const {
        const auto& f = profile_.family();
        const double t2 = t * t;
        const double a = 1.0 - f.D * t2;
        const double W = 1.0 - 2.0 * f.D * t2 + (f.D * f.D - f.K) * t2 * t2;
        const double sw = std::sqrt(W);
        const double S = (a >= 0.0) ? a + sw : -f.K * t2 * t2 / (sw - a);
        const double mn = static_cast<double>(f.m) / f.n;
        const double two_minus_S = (4.0 * f.D * t2 + f.K * t2 * t2) / ((1.0 + f.D * t2) + sw);
        return 2.0 * mn * mn * two_minus_S /
               (t * (c_ + mn * std::sqrt(2.0 * S)));
    }

    double log_rho(double r) const {
        if (!r_dom_.contains(r))
            throw DomainError("map: r outside validity domain");
        QuadratureOptions opt;
        opt.abs_tol = 1e-13;
        if (plus_) {
            const double I = integrate([this](double t) { return regularized_u(t); },
                                       0.0, r, opt);
            return c_ * std::log(r) + (r * profile_.green_antiderivative(r) + c_) - I;
        }
        const double I = integrate([this](double t) { return profile_.green_antiderivative(t); },
                                   r0_, r, opt);
        return r * profile_.green_antiderivative(r) - r0_ * u0_ - I;
    }
};

} // namespace

std::unique_ptr<CoordinateMap> make_type_one_map(const RadialProfile& profile) {
    if (profile.family().kind != FamilyKind::TypeI)
        throw ConfigError("type one map: Type I families only");
    return std::make_unique<TypeOneMap>(profile);
}

std::unique_ptr<CoordinateMap> make_type_two_quadrature_map(const RadialProfile& profile) {
    return std::make_unique<QuadratureMap>(profile);
}

std::unique_ptr<CoordinateMap> make_map(const RadialProfile& profile) {
    switch (profile.preset()) {
    case ProfilePreset::EuclideanKepler:
    case ProfilePreset::CurvedKepler:
        return std::make_unique<TypeOneMap>(profile);
    case ProfilePreset::FlatOscillator:
    case ProfilePreset::Darboux:
        return std::make_unique<DarbouxMap>(profile, profile.preset_parameter());
    case ProfilePreset::CurvedOscillator:
        return std::make_unique<PoincareOscillatorMap>(profile, profile.preset_parameter());
    case ProfilePreset::Generic:
        break;
    }
    if (profile.family().kind == FamilyKind::TypeI)
        return std::make_unique<TypeOneMap>(profile);
    return std::make_unique<QuadratureMap>(profile);
}

RelationResiduals check_relations(const CoordinateMap& map, double r) {
    const auto& dom = map.r_domain();
    if (!dom.contains(r))
        throw DomainError("check_relations: r outside validity domain");
    const double rho = map.rho_of_r(r);
    const double f = map.r_of_rho(rho) / rho;

    // near a domain edge the map derivatives steepen like an inverse square
    // root; shrink the stencil with the distance to the boundary
    double step = 1e-3 * std::max(r, 1e-3);
    const double room = std::min(r - dom.lo, std::isinf(dom.hi) ? step * 8 : dom.hi - r);
    step = std::min(step, 0.01 * room);
    const double drho = deriv_central([&](double x) { return map.rho_of_r(x); }, r, step);

    const double h = map.profile().h(r);
    RelationResiduals res;
    res.roundtrip = std::abs(r - rho * f);
    res.conformal = std::abs(f * drho - h);
    res.logarithmic = std::abs(drho / rho - h / r);
    return res;
}

} // namespace bertrand
