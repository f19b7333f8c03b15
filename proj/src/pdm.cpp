#include "bertrand/pdm.hpp"
#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <cmath>

namespace bertrand {

void PdmSystem::require_in_domain(double rho) const {
    if (!dom_.contains(rho))
        throw DomainError(label() + ": |q| = " + std::to_string(rho) +
                          " outside the configuration domain");
}

double PdmSystem::hamiltonian(std::span<const double> q, std::span<const double> p) const {
    double q2 = 0.0, p2 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q2 += q[i] * q[i];
        p2 += p[i] * p[i];
    }
    const double rho = std::sqrt(q2);
    require_in_domain(rho);
    return 0.5 * p2 / mass(rho) + potential(rho);
}

double pdm_hamiltonian(const PdmSystem& sys, std::span<const double> q,
                       std::span<const double> p) {
    return sys.hamiltonian(q, p);
}

namespace {

Interval open_interval(double lo, double hi) {
    Interval iv;
    iv.lo = lo;
    iv.hi = hi;
    return iv;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

class DarbouxSystem final : public PdmSystem {
public:
    DarbouxSystem(int N, double lambda, double omega, double m0)
        : PdmSystem(N, m0,
                    open_interval(0.0, lambda < 0.0 ? 1.0 / std::sqrt(-lambda) : kInf)),
          lam_(lambda), om2_(omega * omega), omega_(omega),
          map_(make_map(darboux_profile(lambda))) {}

    double mass(double rho) const override { return m0_ * (1.0 + lam_ * rho * rho); }
    double mass_d1(double rho) const override { return m0_ * 2.0 * lam_ * rho; }
    double mass_d2(double) const override { return m0_ * 2.0 * lam_; }

    double potential(double rho) const override {
        const double r2 = rho * rho;
        return 0.5 * om2_ * r2 / (1.0 + lam_ * r2);
    }
    double potential_d1(double rho) const override {
        return om2_ * rho / sq(1.0 + lam_ * rho * rho);
    }
    double potential_d2(double rho) const override {
        const double g = 1.0 + lam_ * rho * rho;
        return om2_ * (1.0 - 3.0 * lam_ * rho * rho) / (g * g * g);
    }

    std::string label() const override { return lam_ == 0.0 ? "flat_oscillator" : "darboux"; }
    std::map<std::string, double> parameters() const override {
        return {{"N", static_cast<double>(dim_)}, {"lambda", lam_}, {"omega", omega_}};
    }
    const CoordinateMap* map() const override { return map_.get(); }

private:
    double lam_, om2_, omega_;
    std::unique_ptr<CoordinateMap> map_;
};

class DarbouxExteriorSystem final : public PdmSystem {
public:
    DarbouxExteriorSystem(int N, double lambda, double omega, double m0)
        : PdmSystem(N, m0, open_interval(1.0 / std::sqrt(-lambda), kInf)),
          al_(-lambda), om2_(omega * omega), omega_(omega) {
        if (!(lambda < 0.0))
            throw ConfigError("darboux exterior system requires lambda < 0");
    }

    double mass(double rho) const override { return m0_ * (al_ * rho * rho - 1.0); }
    double mass_d1(double rho) const override { return m0_ * 2.0 * al_ * rho; }
    double mass_d2(double) const override { return m0_ * 2.0 * al_; }

    double potential(double rho) const override {
        const double g = al_ * rho * rho - 1.0;
        return 0.5 * om2_ * rho * rho / g;
    }
    double potential_d1(double rho) const override {
        return -om2_ * rho / sq(al_ * rho * rho - 1.0);
    }
    double potential_d2(double rho) const override {
        const double g = al_ * rho * rho - 1.0;
        return om2_ * (3.0 * al_ * rho * rho + 1.0) / (g * g * g);
    }

    std::string label() const override { return "darboux_exterior"; }
    std::map<std::string, double> parameters() const override {
        return {{"N", static_cast<double>(dim_)}, {"lambda", -al_}, {"omega", omega_}};
    }

private:
    double al_, om2_, omega_;
};

class TypeOneSystem final : public PdmSystem {
public:
    TypeOneSystem(int N, int n, int m, double K, double A1, double m0, std::string label)
        : PdmSystem(N, m0,
                    open_interval(0.0, K > 0.0
                                           ? std::pow(K, -0.5 * m / static_cast<double>(n))
                                           : kInf)),
          n_(n), m_(m), K_(K), A1_(A1), nu_(static_cast<double>(n) / m),
          label_(std::move(label)),
          map_(make_type_one_map(make_profile(BertrandFamily::type_one(n, m, K)))) {}

    double mass(double rho) const override {
        const double w = wm(rho);
        return 4.0 * m0_ / (w * w * rho * rho);
    }
    double mass_d1(double rho) const override {
        // M'/M = -2 (w'/w + 1/rho), w' = -nu w+ / rho
        return mass(rho) * 2.0 * (nu_ * wp(rho) / wm(rho) - 1.0) / rho;
    }
    double mass_d2(double rho) const override {
        const double w = wm(rho), w1 = wp(rho);
        const double wd = -nu_ * w1 / rho;
        const double wdd = nu_ * (nu_ * w + w1) / (rho * rho);
        const double phi = -2.0 * (wd / w + 1.0 / rho);
        const double phid = -2.0 * (wdd / w - sq(wd / w) - 1.0 / (rho * rho));
        return mass(rho) * (phi * phi + phid);
    }

    double potential(double rho) const override { return 0.5 * A1_ * wp(rho); }
    double potential_d1(double rho) const override {
        return -0.5 * A1_ * nu_ * wm(rho) / rho;
    }
    double potential_d2(double rho) const override {
        return 0.5 * A1_ * nu_ * (nu_ * wp(rho) + wm(rho)) / (rho * rho);
    }

    std::string label() const override { return label_; }
    std::map<std::string, double> parameters() const override {
        return {{"N", static_cast<double>(dim_)}, {"n", static_cast<double>(n_)},
                {"m", static_cast<double>(m_)},   {"K", K_},
                {"A1", A1_}};
    }
    const CoordinateMap* map() const override { return map_.get(); }

private:
    double wm(double rho) const { return std::pow(rho, -nu_) - K_ * std::pow(rho, nu_); }
    double wp(double rho) const { return std::pow(rho, -nu_) + K_ * std::pow(rho, nu_); }

    int n_, m_;
    double K_, A1_, nu_;
    std::string label_;
    std::unique_ptr<CoordinateMap> map_;
};

class KappaOscillatorSystem final : public PdmSystem {
public:
    KappaOscillatorSystem(int N, double kappa, double A2, double m0)
        : PdmSystem(N, m0,
                    open_interval(0.0, kappa == 0.0 ? kInf : 1.0 / std::sqrt(std::abs(kappa)))),
          kap_(kappa), A2_(A2),
          map_(make_map(make_profile(
              BertrandFamily::type_two(2, 1, 0.0, kappa, 0.0, Branch::Plus)))) {}

    double mass(double rho) const override { return 4.0 * m0_ / sq(1.0 + kap_ * rho * rho); }
    double mass_d1(double rho) const override {
        const double g = 1.0 + kap_ * rho * rho;
        return -16.0 * m0_ * kap_ * rho / (g * g * g);
    }
    double mass_d2(double rho) const override {
        const double g = 1.0 + kap_ * rho * rho;
        return -16.0 * m0_ * kap_ * (1.0 - 5.0 * kap_ * rho * rho) / (g * g * g * g);
    }

    double potential(double rho) const override {
        return 2.0 * A2_ * rho * rho / sq(1.0 - kap_ * rho * rho);
    }
    double potential_d1(double rho) const override {
        const double g = 1.0 - kap_ * rho * rho;
        return 4.0 * A2_ * rho * (1.0 + kap_ * rho * rho) / (g * g * g);
    }
    double potential_d2(double rho) const override {
        const double k2 = kap_ * rho * rho;
        const double g = 1.0 - k2;
        return 4.0 * A2_ * (1.0 + 8.0 * k2 + 3.0 * k2 * k2) / (g * g * g * g);
    }

    std::string label() const override { return "kappa_oscillator"; }
    std::map<std::string, double> parameters() const override {
        return {{"N", static_cast<double>(dim_)}, {"kappa", kap_}, {"A2", A2_}};
    }
    const CoordinateMap* map() const override { return map_.get(); }

private:
    double kap_, A2_;
    std::unique_ptr<CoordinateMap> map_;
};

class TypeTwoQuadratureSystem final : public PdmSystem {
public:
    TypeTwoQuadratureSystem(int N, const BertrandFamily& family, double m0)
        : PdmSystem(N, m0, open_interval(0.0, kInf)),
          map_(make_type_two_quadrature_map(make_profile(family))) {
        dom_ = map_->rho_domain();
    }

    double mass(double rho) const override {
        const double r = map_->r_of_rho(rho);
        return m0_ * r * r / (rho * rho);
    }
    double mass_d1(double rho) const override {
        // dM/drho = (2M/rho)(1/h - 1) via d(rho)/dr = rho h / r
        const double r = map_->r_of_rho(rho);
        const double h = map_->profile().h(r);
        return m0_ * (r * r / (rho * rho)) * 2.0 * (1.0 / h - 1.0) / rho;
    }
    double mass_d2(double rho) const override {
        const double step = 1e-4 * std::max(rho, 1e-2);
        return deriv_central([this](double x) { return mass_d1(x); }, rho, step);
    }

    double potential(double rho) const override {
        return map_->profile().potential(map_->r_of_rho(rho));
    }
    double potential_d1(double rho) const override {
        const double r = map_->r_of_rho(rho);
        const double h = map_->profile().h(r);
        return map_->profile().potential_deriv(r) * r / (rho * h);
    }
    double potential_d2(double rho) const override {
        const double step = 1e-4 * std::max(rho, 1e-2);
        return deriv_central([this](double x) { return potential_d1(x); }, rho, step);
    }

    std::string label() const override { return "type2_quadrature"; }
    std::map<std::string, double> parameters() const override {
        const auto& f = map_->profile().family();
        return {{"N", static_cast<double>(dim_)}, {"n", static_cast<double>(f.n)},
                {"m", static_cast<double>(f.m)},  {"K", f.K},
                {"D", f.D},                       {"G", f.G}};
    }
    const CoordinateMap* map() const override { return map_.get(); }

private:
    std::unique_ptr<CoordinateMap> map_;
};

} // namespace

SystemPtr darboux_system(int N, double lambda, double omega, double m0) {
    return std::make_shared<DarbouxSystem>(N, lambda, omega, m0);
}

SystemPtr darboux_exterior_system(int N, double lambda, double omega, double m0) {
    return std::make_shared<DarbouxExteriorSystem>(N, lambda, omega, m0);
}

SystemPtr flat_oscillator_system(int N, double omega, double m0) {
    return darboux_system(N, 0.0, omega, m0);
}

SystemPtr type_one_system(int N, int n, int m, double K, double A1, double m0) {
    return std::make_shared<TypeOneSystem>(N, n, m, K, A1, m0, "type1");
}

SystemPtr kappa_kepler_system(int N, double kappa, double A1, double m0) {
    return std::make_shared<TypeOneSystem>(N, 1, 1, -kappa, A1, m0, "kappa_kepler");
}

SystemPtr kappa_oscillator_system(int N, double kappa, double A2, double m0) {
    return std::make_shared<KappaOscillatorSystem>(N, kappa, A2, m0);
}

SystemPtr type_two_quadrature_system(int N, const BertrandFamily& family, double m0) {
    return std::make_shared<TypeTwoQuadratureSystem>(N, family, m0);
}

} // namespace bertrand
