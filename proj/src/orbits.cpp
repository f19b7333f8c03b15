#include "bertrand/orbits.hpp"
#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bertrand {

double RadialChart::r_of_rho(double rho) const {
    sys_.require_in_domain(rho);
    return rho * std::sqrt(sys_.mass(rho));
}

double RadialChart::rho_of_r(double r) const {
    const auto& dom = sys_.rho_domain();
    double lo = std::max(dom.lo, 1e-12);
    double hi = std::isinf(dom.hi) ? std::max(1.0, 2.0 * lo) : dom.hi * (1.0 - 1e-12);
    if (std::isinf(dom.hi)) {
        while (r_of_rho(hi) < r && hi < 1e14)
            hi *= 2.0;
    }
    while (r_of_rho(lo) > r && lo > 1e-300)
        lo *= 0.5;
    return brent([&](double x) { return r_of_rho(x) - r; }, lo, hi, 0.0, 1e-13);
}

double RadialChart::h_at_rho(double rho) const {
    const double M = sys_.mass(rho);
    return 2.0 * M / (2.0 * M + rho * sys_.mass_d1(rho));
}

double RadialChart::effective_potential(double rho, double L) const {
    return 0.5 * L * L / (sys_.mass(rho) * rho * rho) + sys_.potential(rho);
}

double RadialChart::effective_potential_deriv(double rho, double L) const {
    const double M = sys_.mass(rho);
    const double Md = sys_.mass_d1(rho);
    return sys_.potential_d1(rho) -
           0.5 * L * L * (2.0 * M * rho + Md * rho * rho) / sq(M * rho * rho);
}

double RadialChart::effective_potential_deriv2(double rho, double L) const {
    const double M = sys_.mass(rho);
    const double Md = sys_.mass_d1(rho);
    const double Mdd = sys_.mass_d2(rho);
    const double g = M * rho * rho;
    const double gd = Md * rho * rho + 2.0 * M * rho;
    const double gdd = Mdd * rho * rho + 4.0 * Md * rho + 2.0 * M;
    return sys_.potential_d2(rho) + 0.5 * L * L * (2.0 * gd * gd - g * gdd) / (g * g * g);
}

namespace {

// working bracket inside the open domain
std::pair<double, double> domain_window(const PdmSystem& sys) {
    const auto& dom = sys.rho_domain();
    const double lo = std::isinf(dom.hi) ? std::max(dom.lo * (1.0 + 1e-9), 1e-8)
                                         : std::max(dom.lo + (dom.hi - dom.lo) * 1e-9, 1e-12);
    const double hi = std::isinf(dom.hi) ? 1e8 : dom.hi - (dom.hi - dom.lo) * 1e-9;
    return {lo, hi};
}

} // namespace

CircularOrbit circular_orbit(const PdmSystem& sys, double L) {
    if (!(L > 0.0))
        throw NoCircularOrbit("circular_orbit: L must be positive");
    RadialChart chart(sys);
    auto [lo, hi] = domain_window(sys);
    auto slope = [&](double rho) { return chart.effective_potential_deriv(rho, L); };
    const auto brackets = sign_change_brackets(slope, lo, hi, 400, true);
    if (brackets.empty())
        throw NoCircularOrbit("circular_orbit: no stationary point of the effective potential");
    // Bertrand systems have a single stationary point per L; take the first
    const double rho_c = brent(slope, brackets.front().first, brackets.front().second,
                               0.0, 1e-13);
    CircularOrbit orbit;
    orbit.rho_c = rho_c;
    orbit.r_c = chart.r_of_rho(rho_c);
    orbit.energy = chart.effective_potential(rho_c, L);
    orbit.stable = chart.effective_potential_deriv2(rho_c, L) > 0.0;
    return orbit;
}

TurningPoints turning_points(const PdmSystem& sys, double E, double L) {
    RadialChart chart(sys);
    const CircularOrbit c = circular_orbit(sys, L);
    if (!c.stable)
        throw NoTurningPoints("turning_points: circular orbit is unstable");
    if (E <= c.energy + 1e-14 * std::max(1.0, std::abs(c.energy)))
        throw NoTurningPoints("turning_points: energy at or below the circular minimum");
    auto gap = [&](double rho) { return E - chart.effective_potential(rho, L); };

    auto [wlo, whi] = domain_window(sys);
    double a = c.rho_c;
    while (gap(std::max(a * 0.5, wlo)) > 0.0) {
        a = std::max(a * 0.5, wlo);
        if (a == wlo)
            throw NoTurningPoints("turning_points: no inner turning point in domain");
    }
    const double rho_min = brent(gap, std::max(a * 0.5, wlo), c.rho_c, 0.0, 1e-13);

    double b = c.rho_c;
    while (gap(std::min(b * 2.0, whi)) > 0.0) {
        b = std::min(b * 2.0, whi);
        if (b == whi)
            throw NoTurningPoints("turning_points: orbit is unbounded at this energy");
    }
    const double rho_max = brent(gap, c.rho_c, std::min(b * 2.0, whi), 0.0, 1e-13);

    TurningPoints tp;
    tp.rho_min = rho_min;
    tp.rho_max = rho_max;
    tp.r_min = chart.r_of_rho(rho_min);
    tp.r_max = chart.r_of_rho(rho_max);
    return tp;
}

namespace {

// (E - U(rho)) / ((rho - rho_min)(rho_max - rho)), positive and smooth across
// the turning points
struct RegularizedGap {
    const RadialChart& chart;
    double E, L, rho_min, rho_max;

    double operator()(double rho) const {
        const double num = E - chart.effective_potential(rho, L);
        const double den = (rho - rho_min) * (rho_max - rho);
        const double g = num / den;
        return std::max(g, 1e-300);
    }
};

} // namespace

double apsidal_angle(const PdmSystem& sys, double E, double L) {
    RadialChart chart(sys);
    const TurningPoints tp = turning_points(sys, E, L);
    const double width = tp.rho_max - tp.rho_min;
    RegularizedGap gap{chart, E, L, tp.rho_min, tp.rho_max};
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double rho = tp.rho_min + width * st * st;
        const double M = sys.mass(rho);
        return 2.0 * L / (rho * rho * std::sqrt(2.0 * M * gap(rho)));
    };
    QuadratureOptions opt;
    opt.abs_tol = 1e-11;
    opt.rel_tol = 1e-11;
    return integrate(integrand, 0.0, 0.5 * M_PI, opt);
}

double radial_period(const PdmSystem& sys, double E, double L) {
    RadialChart chart(sys);
    const TurningPoints tp = turning_points(sys, E, L);
    const double width = tp.rho_max - tp.rho_min;
    RegularizedGap gap{chart, E, L, tp.rho_min, tp.rho_max};
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double rho = tp.rho_min + width * st * st;
        return 4.0 * std::sqrt(sys.mass(rho) / (2.0 * gap(rho)));
    };
    QuadratureOptions opt;
    opt.abs_tol = 1e-11;
    opt.rel_tol = 1e-11;
    return integrate(integrand, 0.0, 0.5 * M_PI, opt);
}

PhaseState pericenter_state(const PdmSystem& sys, double E, double L, int N) {
    if (N < 2)
        throw ConfigError("pericenter_state: N >= 2 required");
    const TurningPoints tp = turning_points(sys, E, L);
    PhaseState s;
    s.q.assign(N, 0.0);
    s.p.assign(N, 0.0);
    s.q[0] = tp.rho_min;
    s.p[1] = L / tp.rho_min;
    return s;
}

double apsidal_angle_from_trajectory(const Trajectory& traj) {
    const std::size_t n = traj.samples.size();
    if (n < 8)
        throw ConfigError("apsidal measurement: trajectory too short");
    const int N = traj.samples.front().state.dim();

    // in-plane continuous azimuth; for N > 2 use the plane orthogonal to L
    std::vector<double> theta(n), srad(n), times(n);
    {
        const auto& s0 = traj.samples.front().state;
        std::vector<double> e1(N, 0.0), e2(N, 0.0);
        const double rho0 = s0.radius();
        for (int i = 0; i < N; ++i)
            e1[i] = s0.q[i] / rho0;
        // transverse part of p defines the second basis vector
        double pq = 0.0;
        for (int i = 0; i < N; ++i)
            pq += s0.p[i] * e1[i];
        double nrm = 0.0;
        for (int i = 0; i < N; ++i) {
            e2[i] = s0.p[i] - pq * e1[i];
            nrm += e2[i] * e2[i];
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12)
            throw DegenerateOrbit("apsidal measurement: radial (zero angular momentum) orbit");
        for (int i = 0; i < N; ++i)
            e2[i] /= nrm;
        double prev = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto& s = traj.samples[k].state;
            double x = 0.0, y = 0.0;
            for (int i = 0; i < N; ++i) {
                x += s.q[i] * e1[i];
                y += s.q[i] * e2[i];
            }
            double th = std::atan2(y, x);
            if (k > 0) {
                while (th < prev - M_PI) th += 2.0 * M_PI;
                while (th > prev + M_PI) th -= 2.0 * M_PI;
            }
            theta[k] = th;
            prev = th;
            srad[k] = s.radial_momentum_indicator();
            times[k] = traj.samples[k].t;
        }
    }

    // apsis passages: sign changes of q.p, refined by local quadratic
    // interpolation of q.p and of theta in time
    std::vector<double> apsis_theta;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (srad[k] == 0.0 || srad[k] * srad[k + 1] >= 0.0)
            continue;
        const std::size_t i0 = k - 1;
        const double t0 = times[i0], t1 = times[i0 + 1], t2 = times[i0 + 2];
        const double s0 = srad[i0], s1 = srad[i0 + 1], s2 = srad[i0 + 2];
        // quadratic through three points, Newton refinement seeded by the
        // linear crossing between t1 and t2
        double tc = t1 + (t2 - t1) * (s1 / (s1 - s2));
        for (int it = 0; it < 8; ++it) {
            const double l0 = (tc - t1) * (tc - t2) / ((t0 - t1) * (t0 - t2));
            const double l1 = (tc - t0) * (tc - t2) / ((t1 - t0) * (t1 - t2));
            const double l2 = (tc - t0) * (tc - t1) / ((t2 - t0) * (t2 - t1));
            const double val = s0 * l0 + s1 * l1 + s2 * l2;
            const double d0 = (2.0 * tc - t1 - t2) / ((t0 - t1) * (t0 - t2));
            const double d1 = (2.0 * tc - t0 - t2) / ((t1 - t0) * (t1 - t2));
            const double d2 = (2.0 * tc - t0 - t1) / ((t2 - t0) * (t2 - t1));
            const double der = s0 * d0 + s1 * d1 + s2 * d2;
            if (der == 0.0)
                break;
            tc -= val / der;
        }
        const double l0 = (tc - t1) * (tc - t2) / ((t0 - t1) * (t0 - t2));
        const double l1 = (tc - t0) * (tc - t2) / ((t1 - t0) * (t1 - t2));
        const double l2 = (tc - t0) * (tc - t1) / ((t2 - t0) * (t2 - t1));
        apsis_theta.push_back(theta[i0] * l0 + theta[i0 + 1] * l1 + theta[i0 + 2] * l2);
    }
    if (apsis_theta.size() < 2)
        throw NoTurningPoints("apsidal measurement: fewer than two apsis passages");

    double mean = 0.0;
    for (std::size_t k = 0; k + 1 < apsis_theta.size(); ++k)
        mean += std::abs(apsis_theta[k + 1] - apsis_theta[k]);
    return mean / (apsis_theta.size() - 1);
}

std::vector<PhaseState> sample_bounded_states(const PdmSystem& sys, int N,
                                              std::uint64_t seed, int count,
                                              const OrbitSampleOptions& opt) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uq(-opt.q_box, opt.q_box);
    std::uniform_real_distribution<double> up(-opt.p_box, opt.p_box);
    const auto& dom = sys.rho_domain();

    std::vector<PhaseState> out;
    for (int attempt = 0; attempt < opt.max_attempts && static_cast<int>(out.size()) < count;
         ++attempt) {
        PhaseState s;
        s.q.resize(N);
        s.p.resize(N);
        for (int i = 0; i < N; ++i) {
            s.q[i] = uq(rng);
            s.p[i] = up(rng);
        }
        const double rho = s.radius();
        const double margin = opt.domain_margin * std::max(1.0, rho);
        if (!(rho > dom.lo + margin) || !(rho < dom.hi - margin))
            continue;
        const double L = s.angular_momentum_norm();
        if (L < opt.min_angular)
            continue;
        try {
            const double E = sys.hamiltonian(s.q, s.p);
            turning_points(sys, E, L);
        } catch (const Error&) {
            continue;
        }
        out.push_back(std::move(s));
    }
    if (static_cast<int>(out.size()) < count)
        throw ConfigError("sample_bounded_states: sampling budget exhausted");
    return out;
}

} // namespace bertrand
