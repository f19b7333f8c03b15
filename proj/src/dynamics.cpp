#include "bertrand/dynamics.hpp"
#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace bertrand {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return s;
}

} // namespace

double PhaseState::radius() const { return std::sqrt(norm2(q)); }
double PhaseState::kinetic_norm() const { return std::sqrt(norm2(p)); }

double PhaseState::radial_momentum_indicator() const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i)
        s += q[i] * p[i];
    return s;
}

double PhaseState::angular_momentum_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i)
        for (int j = i + 1; j < dim(); ++j)
            s += sq(q[i] * p[j] - q[j] * p[i]);
    return std::sqrt(s);
}

Gradient hamiltonian_gradient(const PdmSystem& sys, const PhaseState& s) {
    const int N = s.dim();
    const double rho = s.radius();
    sys.require_in_domain(rho);
    const double M = sys.mass(rho);
    const double Md = sys.mass_d1(rho);
    const double Vd = sys.potential_d1(rho);
    const double p2 = norm2(s.p);
    const double radial = Vd - 0.5 * p2 * Md / (M * M);

    Gradient g;
    g.dq.resize(N);
    g.dp.resize(N);
    for (int i = 0; i < N; ++i) {
        g.dq[i] = radial * s.q[i] / rho;
        g.dp[i] = s.p[i] / M;
    }
    return g;
}

namespace {

// z = (q, p) packed into one vector; f = (dH/dp, -dH/dq)
void flow_field(const PdmSystem& sys, const VectorXd& z, VectorXd& f) {
    const int N = static_cast<int>(z.size()) / 2;
    double q2 = 0.0, p2 = 0.0;
    for (int i = 0; i < N; ++i) {
        q2 += z[i] * z[i];
        p2 += z[N + i] * z[N + i];
    }
    const double rho = std::sqrt(q2);
    sys.require_in_domain(rho);
    const double M = sys.mass(rho);
    const double radial = sys.potential_d1(rho) - 0.5 * p2 * sys.mass_d1(rho) / (M * M);
    for (int i = 0; i < N; ++i) {
        f[i] = z[N + i] / M;
        f[N + i] = -radial * z[i] / rho;
    }
}

// Jacobian of the flow field: [[Hpq^T, Hpp], [-Hqq, -Hpq]]
void flow_jacobian(const PdmSystem& sys, const VectorXd& z, MatrixXd& Df) {
    const int N = static_cast<int>(z.size()) / 2;
    double q2 = 0.0, p2 = 0.0;
    for (int i = 0; i < N; ++i) {
        q2 += z[i] * z[i];
        p2 += z[N + i] * z[N + i];
    }
    const double rho = std::sqrt(q2);
    sys.require_in_domain(rho);
    const double M = sys.mass(rho);
    const double Md = sys.mass_d1(rho);
    const double Mdd = sys.mass_d2(rho);
    const double Vd = sys.potential_d1(rho);
    const double Vdd = sys.potential_d2(rho);

    const double radial = Vd - 0.5 * p2 * Md / (M * M);
    const double radial_d = Vdd - 0.5 * p2 * (Mdd * M - 2.0 * Md * Md) / (M * M * M);
    const double mp = Md / (rho * M * M);   // d(1/M)/dq_j = -mp q_j

    Df.setZero();
    for (int i = 0; i < N; ++i) {
        const double qi = z[i], pi = z[N + i];
        for (int j = 0; j < N; ++j) {
            const double qj = z[j], pj = z[N + j];
            const double hqq = radial * ((i == j ? 1.0 : 0.0) / rho - qi * qj / (rho * rho * rho)) +
                               radial_d * qi * qj / (rho * rho);
            Df(i, j) = -pi * mp * qj;                    // df_q/dq = d^2H/dp_i dq_j
            Df(i, N + j) = (i == j ? 1.0 / M : 0.0);     // df_q/dp
            Df(N + i, j) = -hqq;                         // df_p/dq
            Df(N + i, N + j) = pj * mp * qi;             // df_p/dp = -d^2H/dq_i dp_j
        }
    }
}

PhaseState unpack(const VectorXd& z) {
    const int N = static_cast<int>(z.size()) / 2;
    PhaseState s;
    s.q.assign(z.data(), z.data() + N);
    s.p.assign(z.data() + N, z.data() + 2 * N);
    return s;
}

} // namespace

Trajectory integrate_midpoint(const PdmSystem& sys, const PhaseState& s0,
                              double t_end, const MidpointConfig& cfg) {
    if (!(cfg.dt > 0.0))
        throw ConfigError("integrate_midpoint: dt must be positive");
    if (!(t_end > 0.0))
        throw ConfigError("integrate_midpoint: t_end must be positive");

    const int N = s0.dim();
    const long nsteps = std::lround(std::ceil(t_end / cfg.dt - 1e-9));
    VectorXd z(2 * N), z1(2 * N), zm(2 * N), F(2 * N), fval(2 * N);
    MatrixXd Df(2 * N, 2 * N), J(2 * N, 2 * N);
    for (int i = 0; i < N; ++i) {
        z[i] = s0.q[i];
        z[N + i] = s0.p[i];
    }

    Trajectory traj;
    traj.samples.push_back({0.0, s0});
    const double H0 = sys.hamiltonian(s0.q, s0.p);
    const double scale = std::max(1.0, z.lpNorm<Eigen::Infinity>());
    double t = 0.0;

    for (long step = 0; step < nsteps; ++step) {
        const double dt = std::min(cfg.dt, t_end - t);
        try {
            // explicit-midpoint predictor
            flow_field(sys, z, fval);
            zm = z + 0.5 * dt * fval;
            flow_field(sys, zm, fval);
            z1 = z + dt * fval;

            double res_prev = std::numeric_limits<double>::infinity();
            bool converged = false;
            for (int it = 0; it < cfg.max_newton_iterations; ++it) {
                zm = 0.5 * (z + z1);
                flow_field(sys, zm, fval);
                F = z1 - z - dt * fval;
                const double res = F.lpNorm<Eigen::Infinity>();
                ++traj.newton_iterations;
                // push to the machine floor; accept once progress stalls
                // below the contract tolerance
                if (res <= 1e-15 * scale || (res <= cfg.newton_tol * scale && res >= 0.5 * res_prev)) {
                    converged = true;
                    break;
                }
                res_prev = res;
                flow_jacobian(sys, zm, Df);
                J = MatrixXd::Identity(2 * N, 2 * N) - 0.5 * dt * Df;
                z1 -= J.partialPivLu().solve(F);
            }
            if (!converged) {
                zm = 0.5 * (z + z1);
                flow_field(sys, zm, fval);
                F = z1 - z - dt * fval;
                if (F.lpNorm<Eigen::Infinity>() > cfg.newton_tol * scale)
                    throw StepFailure("implicit midpoint: Newton did not converge");
            }
        } catch (const DomainError&) {
            throw DomainExit("trajectory reached the domain boundary", t);
        }
        z = z1;
        t += dt;
        ++traj.steps;

        if ((step + 1) % cfg.sample_stride == 0 || step + 1 == nsteps) {
            PhaseState s = unpack(z);
            const double H = sys.hamiltonian(s.q, s.p);
            traj.max_energy_drift = std::max(
                traj.max_energy_drift, std::abs(H - H0) / std::max(std::abs(H0), 1e-30));
            traj.samples.push_back({t, std::move(s)});
        }
    }
    traj.drift_flagged = traj.max_energy_drift > cfg.drift_budget;
    return traj;
}

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

} // namespace

Trajectory integrate_rk45(const PdmSystem& sys, const PhaseState& s0,
                          double t_end, const RkConfig& cfg) {
    const int N = s0.dim();
    const int n = 2 * N;
    VectorXd z(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ztmp(n), z5(n), err(n);
    for (int i = 0; i < N; ++i) {
        z[i] = s0.q[i];
        z[N + i] = s0.p[i];
    }

    Trajectory traj;
    traj.samples.push_back({0.0, s0});
    const double H0 = sys.hamiltonian(s0.q, s0.p);

    double t = 0.0;
    double dt = std::min(cfg.initial_dt, t_end);
    long accepted = 0;

    try {
        flow_field(sys, z, k1);
        while (t < t_end) {
            dt = std::min(dt, t_end - t);
            ztmp = z + dt * (a21 * k1);
            flow_field(sys, ztmp, k2);
            ztmp = z + dt * (a31 * k1 + a32 * k2);
            flow_field(sys, ztmp, k3);
            ztmp = z + dt * (a41 * k1 + a42 * k2 + a43 * k3);
            flow_field(sys, ztmp, k4);
            ztmp = z + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            flow_field(sys, ztmp, k5);
            ztmp = z + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            flow_field(sys, ztmp, k6);
            z5 = z + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            flow_field(sys, z5, k7);
            err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double en = 0.0;
            for (int i = 0; i < n; ++i) {
                const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(z[i]), std::abs(z5[i]));
                en += sq(err[i] / sc);
            }
            en = std::sqrt(en / n);

            if (en <= 1.0) {
                t += dt;
                z = z5;
                k1 = k7;   // FSAL
                ++traj.steps;
                ++accepted;
                if (accepted % cfg.sample_stride == 0 || t >= t_end) {
                    PhaseState s = unpack(z);
                    const double H = sys.hamiltonian(s.q, s.p);
                    traj.max_energy_drift =
                        std::max(traj.max_energy_drift,
                                 std::abs(H - H0) / std::max(std::abs(H0), 1e-30));
                    traj.samples.push_back({t, std::move(s)});
                }
            } else {
                ++traj.rejected_steps;
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(en, 1e-10), -0.2), 0.2, 5.0);
            dt *= fac;
            if (dt < 1e-14 * std::max(1.0, t))
                throw ConvergenceError("rk45: step size underflow");
        }
    } catch (const DomainError&) {
        throw DomainExit("trajectory reached the domain boundary", t);
    }
    return traj;
}

double angular_integral_leading(const PhaseState& s, int m) {
    const int N = s.dim();
    if (m < 2 || m > N)
        throw IndexError("angular integral: index m must satisfy 2 <= m <= N");
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            sum += sq(s.q[i] * s.p[j] - s.q[j] * s.p[i]);
    return sum;
}

double angular_integral_trailing(const PhaseState& s, int m) {
    const int N = s.dim();
    if (m < 2 || m > N)
        throw IndexError("angular integral: index m must satisfy 2 <= m <= N");
    double sum = 0.0;
    for (int i = N - m; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            sum += sq(s.q[i] * s.p[j] - s.q[j] * s.p[i]);
    return sum;
}

std::pair<double, double> angular_integrals(const PhaseState& s, int m) {
    return {angular_integral_leading(s, m), angular_integral_trailing(s, m)};
}

double darboux_hamiltonian_value(double lambda, double omega, const PhaseState& s) {
    const double q2 = norm2(s.q), p2 = norm2(s.p);
    return 0.5 * (p2 + omega * omega * q2) / (1.0 + lambda * q2);
}

std::vector<double> fradkin_tensor(double lambda, double omega, const PhaseState& s) {
    const int N = s.dim();
    const double H = darboux_hamiltonian_value(lambda, omega, s);
    const double c = 2.0 * lambda * H - omega * omega;
    std::vector<double> C(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            C[i * N + j] = s.p[i] * s.p[j] - c * s.q[i] * s.q[j];
    return C;
}

std::array<double, 3> fradkin_unit_vector(const PhaseState& s, double phi) {
    if (s.dim() != 3)
        throw ConfigError("fradkin_unit_vector: N = 3 required");
    const auto& q = s.q;
    const auto& p = s.p;
    const double rho = s.radius();
    std::array<double, 3> L{q[1] * p[2] - q[2] * p[1], q[2] * p[0] - q[0] * p[2],
                            q[0] * p[1] - q[1] * p[0]};
    const double J = std::sqrt(sq(L[0]) + sq(L[1]) + sq(L[2]));
    if (J < 1e-12)
        throw DegenerateOrbit("fradkin_unit_vector: vanishing angular momentum");
    // q x (q x p) = q (q.p) - p |q|^2
    const double qp = s.radial_momentum_indicator();
    std::array<double, 3> a;
    const double cf = std::cos(phi) / rho;
    const double sf = std::sin(phi) / (rho * J);
    for (int i = 0; i < 3; ++i)
        a[i] = cf * q[i] + sf * (q[i] * qp - p[i] * rho * rho);
    return a;
}

std::array<double, 3> runge_lenz(const PhaseState& s, double mass, double alpha) {
    if (s.dim() != 3)
        throw ConfigError("runge_lenz: N = 3 required");
    const auto& q = s.q;
    const auto& p = s.p;
    const double rho = s.radius();
    const std::array<double, 3> L{q[1] * p[2] - q[2] * p[1], q[2] * p[0] - q[0] * p[2],
                                  q[0] * p[1] - q[1] * p[0]};
    std::array<double, 3> e;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        e[i] = p[j] * L[k] - p[k] * L[j] - mass * alpha * q[i] / rho;
    }
    return e;
}

namespace {

class HamiltonianFunction final : public PhaseFunction {
public:
    explicit HamiltonianFunction(SystemPtr sys) : sys_(std::move(sys)) {}
    std::string name() const override { return "H"; }
    double value(const PhaseState& s) const override { return sys_->hamiltonian(s.q, s.p); }
    Gradient gradient(const PhaseState& s) const override {
        return hamiltonian_gradient(*sys_, s);
    }

private:
    SystemPtr sys_;
};

class AngularBlockFunction final : public PhaseFunction {
public:
    AngularBlockFunction(int m, bool leading) : m_(m), leading_(leading) {}
    std::string name() const override {
        return (leading_ ? "C^(" : "C_(") + std::to_string(m_) + ")";
    }
    double value(const PhaseState& s) const override {
        return leading_ ? angular_integral_leading(s, m_) : angular_integral_trailing(s, m_);
    }
    Gradient gradient(const PhaseState& s) const override {
        const int N = s.dim();
        if (m_ < 2 || m_ > N)
            throw IndexError("angular integral: index m must satisfy 2 <= m <= N");
        Gradient g;
        g.dq.assign(N, 0.0);
        g.dp.assign(N, 0.0);
        const int lo = leading_ ? 0 : N - m_;
        const int hi = leading_ ? m_ : N;
        for (int k = lo; k < hi; ++k) {
            double dq = 0.0, dp = 0.0;
            for (int j = lo; j < hi; ++j) {
                if (j == k)
                    continue;
                const double Lkj = s.q[k] * s.p[j] - s.q[j] * s.p[k];
                dq += Lkj * s.p[j];
                dp -= Lkj * s.q[j];
            }
            g.dq[k] = 2.0 * dq;
            g.dp[k] = 2.0 * dp;
        }
        return g;
    }

private:
    int m_;
    bool leading_;
};

class FradkinComponentFunction final : public PhaseFunction {
public:
    FradkinComponentFunction(double lambda, double omega, int i, int j)
        : lam_(lambda), om_(omega), i_(i), j_(j) {}
    std::string name() const override {
        return "C_" + std::to_string(i_ + 1) + std::to_string(j_ + 1);
    }
    double value(const PhaseState& s) const override {
        const double H = darboux_hamiltonian_value(lam_, om_, s);
        return s.p[i_] * s.p[j_] - (2.0 * lam_ * H - om_ * om_) * s.q[i_] * s.q[j_];
    }
    Gradient gradient(const PhaseState& s) const override {
        const int N = s.dim();
        const double q2 = norm2(s.q);
        const double B = 1.0 + lam_ * q2;
        const double H = darboux_hamiltonian_value(lam_, om_, s);
        const double c = 2.0 * lam_ * H - om_ * om_;
        Gradient g;
        g.dq.assign(N, 0.0);
        g.dp.assign(N, 0.0);
        for (int k = 0; k < N; ++k) {
            const double dHq = s.q[k] * (om_ * om_ - 2.0 * lam_ * H) / B;
            const double dHp = s.p[k] / B;
            g.dq[k] = -2.0 * lam_ * dHq * s.q[i_] * s.q[j_];
            g.dp[k] = -2.0 * lam_ * dHp * s.q[i_] * s.q[j_];
            if (k == i_) {
                g.dq[k] -= c * s.q[j_];
                g.dp[k] += s.p[j_];
            }
            if (k == j_) {
                g.dq[k] -= c * s.q[i_];
                g.dp[k] += s.p[i_];
            }
        }
        return g;
    }

private:
    double lam_, om_;
    int i_, j_;
};

} // namespace

std::unique_ptr<PhaseFunction> make_hamiltonian_function(SystemPtr sys) {
    return std::make_unique<HamiltonianFunction>(std::move(sys));
}

std::unique_ptr<PhaseFunction> make_leading_angular_function(int m) {
    return std::make_unique<AngularBlockFunction>(m, true);
}

std::unique_ptr<PhaseFunction> make_trailing_angular_function(int m) {
    return std::make_unique<AngularBlockFunction>(m, false);
}

std::unique_ptr<PhaseFunction> make_fradkin_component_function(double lambda, double omega,
                                                               int i, int j) {
    return std::make_unique<FradkinComponentFunction>(lambda, omega, i, j);
}

std::vector<std::unique_ptr<PhaseFunction>> standard_invariant_set(SystemPtr sys,
                                                                   double lambda,
                                                                   double omega) {
    const int N = sys->dimension();
    std::vector<std::unique_ptr<PhaseFunction>> fns;
    fns.push_back(make_hamiltonian_function(std::move(sys)));
    for (int m = 2; m <= N; ++m)
        fns.push_back(make_leading_angular_function(m));
    for (int m = 2; m <= N - 1; ++m)   // C_(N) duplicates C^(N)
        fns.push_back(make_trailing_angular_function(m));
    fns.push_back(make_fradkin_component_function(lambda, omega, 0, 0));
    return fns;
}

double poisson_bracket(const PhaseFunction& a, const PhaseFunction& b,
                       const PhaseState& s) {
    const Gradient ga = a.gradient(s);
    const Gradient gb = b.gradient(s);
    double sum = 0.0;
    for (int i = 0; i < s.dim(); ++i)
        sum += ga.dq[i] * gb.dp[i] - ga.dp[i] * gb.dq[i];
    return sum;
}

int independence_rank(const std::vector<const PhaseFunction*>& fns,
                      const PhaseState& s, double threshold) {
    const int k = static_cast<int>(fns.size());
    if (k == 0)
        throw ConfigError("independence_rank: empty function list");
    const int N = s.dim();
    MatrixXd Jc(k, 2 * N);
    for (int r = 0; r < k; ++r) {
        const Gradient g = fns[r]->gradient(s);
        double rownorm = 0.0;
        for (int i = 0; i < N; ++i) {
            Jc(r, i) = g.dq[i];
            Jc(r, N + i) = g.dp[i];
            rownorm += sq(g.dq[i]) + sq(g.dp[i]);
        }
        if (std::sqrt(rownorm) < 1e-12)
            throw DegeneratePoint("independence_rank: vanishing gradient of " + fns[r]->name());
    }
    Eigen::JacobiSVD<MatrixXd> svd(Jc);
    const auto& sv = svd.singularValues();
    const double cutoff = threshold * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        rank += sv(i) > cutoff;
    return rank;
}

DriftReport conservation_report(const Trajectory& traj,
                                const std::vector<const PhaseFunction*>& fns) {
    if (traj.samples.empty())
        throw ConfigError("conservation_report: empty trajectory");
    DriftReport report;
    for (const auto* fn : fns) {
        DriftEntry entry;
        entry.name = fn->name();
        entry.initial = fn->value(traj.samples.front().state);
        const double norm = std::max(std::abs(entry.initial), 1e-30);
        for (const auto& sample : traj.samples)
            entry.max_drift = std::max(entry.max_drift,
                                       std::abs(fn->value(sample.state) - entry.initial) / norm);
        report.worst = std::max(report.worst, entry.max_drift);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::vector<AxisSample> fradkin_axis_series(const Trajectory& traj) {
    if (traj.samples.size() < 3)
        throw ConfigError("fradkin_axis_series: trajectory too short");
    const PhaseState& s0 = traj.samples.front().state;
    if (s0.dim() != 3)
        throw ConfigError("fradkin_axis_series: N = 3 required");

    // orbital-plane basis from the (conserved) angular momentum direction
    const auto& q0 = s0.q;
    const auto& p0 = s0.p;
    std::array<double, 3> L{q0[1] * p0[2] - q0[2] * p0[1], q0[2] * p0[0] - q0[0] * p0[2],
                            q0[0] * p0[1] - q0[1] * p0[0]};
    const double J = std::sqrt(sq(L[0]) + sq(L[1]) + sq(L[2]));
    if (J < 1e-12)
        throw DegenerateOrbit("fradkin_axis_series: vanishing angular momentum");
    for (auto& x : L)
        x /= J;
    const double rho0 = s0.radius();
    std::array<double, 3> e1{q0[0] / rho0, q0[1] / rho0, q0[2] / rho0};
    std::array<double, 3> e2{L[1] * e1[2] - L[2] * e1[1], L[2] * e1[0] - L[0] * e1[2],
                             L[0] * e1[1] - L[1] * e1[0]};

    const std::size_t n = traj.samples.size();
    std::vector<double> theta(n), srad(n);
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = traj.samples[k].state;
        const double x = s.q[0] * e1[0] + s.q[1] * e1[1] + s.q[2] * e1[2];
        const double y = s.q[0] * e2[0] + s.q[1] * e2[1] + s.q[2] * e2[2];
        double th = std::atan2(y, x);
        if (k > 0) {
            while (th < prev - M_PI) th += 2.0 * M_PI;
            while (th > prev + M_PI) th -= 2.0 * M_PI;
        }
        theta[k] = th;
        prev = th;
        srad[k] = s.radial_momentum_indicator();
    }

    // pericenter azimuths: q.p crossings from negative to positive
    std::vector<std::pair<std::size_t, double>> peri;   // (index after crossing, azimuth)
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (srad[k] < 0.0 && srad[k + 1] >= 0.0) {
            const double alpha = -srad[k] / (srad[k + 1] - srad[k]);
            peri.emplace_back(k + 1, theta[k] + alpha * (theta[k + 1] - theta[k]));
        }
    }
    if (peri.empty())
        throw DegenerateOrbit("fradkin_axis_series: no pericenter passage in trajectory");

    std::vector<AxisSample> out(n);
    std::size_t pk = 0;
    for (std::size_t k = 0; k < n; ++k) {
        while (pk + 1 < peri.size() && peri[pk + 1].first <= k)
            ++pk;
        const double ref = (k >= peri[0].first) ? peri[pk].second : peri[0].second;
        out[k].t = traj.samples[k].t;
        out[k].a = fradkin_unit_vector(traj.samples[k].state, theta[k] - ref);
    }
    return out;
}

} // namespace bertrand
