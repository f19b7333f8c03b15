#include "bertrand/spectrum.hpp"
#include "bertrand/errors.hpp"
#include "bertrand/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <thread>

namespace bertrand {

namespace {

void require_discrete_regime(const QuantumParams& p) {
    if (!(p.lambda > 0.0))
        throw RegimeError("discrete spectrum requires lambda > 0");
    if (!(p.omega > 0.0) || !(p.hbar > 0.0))
        throw ConfigError("omega and hbar must be positive");
}

double flat_level(const QuantumParams& p, int n) {
    return p.hbar * p.omega * (n + 0.5 * p.N);
}

// analytic level for lambda > 0, flat oscillator level at lambda == 0
double reference_level(const QuantumParams& p, int n) {
    return p.lambda > 0.0 ? analytic_level(p, n) : flat_level(p, n);
}

} // namespace

double analytic_level(const QuantumParams& p, int n) {
    require_discrete_regime(p);
    if (n < 0)
        throw ConfigError("analytic_level: n >= 0 required");
    const double nu = n + 0.5 * p.N;
    const double t = p.hbar * p.lambda * nu;
    const double S = std::sqrt(t * t + p.omega * p.omega);
    return p.hbar * nu * p.omega * p.omega / (S + t);
}

double analytic_level_alt(const QuantumParams& p, int n) {
    require_discrete_regime(p);
    if (n < 0)
        throw ConfigError("analytic_level_alt: n >= 0 required");
    const double nu = n + 0.5 * p.N;
    const double x = sq(p.omega / (p.hbar * p.lambda * nu));
    return p.omega * p.omega / (p.lambda * (1.0 + std::sqrt(1.0 + x)));
}

double quadratic_identity_residual(const QuantumParams& p, int n) {
    const double E = analytic_level(p, n);
    const double nu = n + 0.5 * p.N;
    const double lhs = E * E;
    const double rhs = p.hbar * p.hbar * (p.omega * p.omega - 2.0 * p.lambda * E) * nu * nu;
    return std::abs(lhs - rhs) / std::max(E * E, 1.0);
}

double continuum_bottom(const QuantumParams& p) {
    require_discrete_regime(p);
    return 0.5 * p.omega * p.omega / p.lambda;
}

namespace {

std::uint64_t binomial(int a, int b) {
    if (b < 0 || a < 0 || b > a)
        return 0;
    b = std::min(b, a - b);
    std::uint64_t result = 1;
    for (int i = 1; i <= b; ++i)
        result = result * static_cast<std::uint64_t>(a - b + i) / i;
    return result;
}

} // namespace

std::uint64_t degeneracy(int N, int n) {
    if (N < 1 || n < 0)
        throw ConfigError("degeneracy: N >= 1 and n >= 0 required");
    return binomial(n + N - 1, N - 1);
}

std::uint64_t harmonic_dimension(int N, int l) {
    if (N < 1 || l < 0)
        throw ConfigError("harmonic_dimension: N >= 1 and l >= 0 required");
    if (N == 1)
        return l <= 1 ? 1 : 0;
    return binomial(l + N - 1, N - 1) - binomial(l + N - 3, N - 1);
}

std::uint64_t degeneracy_by_count(int N, int n) {
    std::uint64_t total = 0;
    for (int l = n % 2; l <= n; l += 2)
        total += harmonic_dimension(N, l);
    return total;
}

namespace {

// Conservative cell-centered discretization of the reduced radial pencil
//   -hbar^2 (rho^{N-1} R')' + [hbar^2 l(l+N-2) rho^{N-3} + omega^2 rho^{N+1}] R
//     = 2 E (1 + lambda rho^2) rho^{N-1} R
// on nodes rho_i = (i - 1/2) dx. The flux coefficient rho^{N-1} vanishes at
// the origin face, which imposes the regular boundary behavior in every
// angular sector (including the delicate N = 2, l = 0 one); the outer face
// carries a Dirichlet condition.
struct Tridiag {
    std::vector<double> diag;     // A_ii
    std::vector<double> off;      // A_{i,i+1}
    std::vector<double> weight;   // B_ii > 0
};

Tridiag build_pencil(const QuantumParams& p, const RadialGrid& grid) {
    const int m = grid.points;
    const double dx = grid.rho_max / (m + 0.5);
    const double h2 = p.hbar * p.hbar;
    const double ctf = h2 * grid.l * (grid.l + p.N - 2);
    const double om2 = p.omega * p.omega;

    Tridiag t;
    t.diag.resize(m);
    t.off.resize(m - 1);
    t.weight.resize(m);
    for (int i = 1; i <= m; ++i) {
        const double rho = (i - 0.5) * dx;
        const double fp = std::pow(i * dx, p.N - 1);
        const double fm = std::pow((i - 1) * dx, p.N - 1);
        t.diag[i - 1] = h2 * (fp + fm) / (dx * dx) + ctf * std::pow(rho, p.N - 3) +
                        om2 * std::pow(rho, p.N + 1);
        if (i < m)
            t.off[i - 1] = -h2 * fp / (dx * dx);
        t.weight[i - 1] = 2.0 * (1.0 + p.lambda * rho * rho) * std::pow(rho, p.N - 1);
    }
    return t;
}

// number of eigenvalues of (A, B) strictly below x, by the Sturm sequence of
// the congruent A - x B
int sturm_count(const Tridiag& t, double x) {
    const int m = static_cast<int>(t.diag.size());
    int count = 0;
    double d = t.diag[0] - x * t.weight[0];
    if (d == 0.0)
        d = -1e-300;
    count += d < 0.0;
    for (int i = 1; i < m; ++i) {
        d = (t.diag[i] - x * t.weight[i]) - t.off[i - 1] * t.off[i - 1] / d;
        if (d == 0.0)
            d = -1e-300;
        count += d < 0.0;
    }
    return count;
}

std::vector<double> sturm_lowest(const Tridiag& t, int count) {
    const int m = static_cast<int>(t.diag.size());
    double glo = std::numeric_limits<double>::infinity();
    double ghi = -glo;
    for (int i = 0; i < m; ++i) {
        const double lo_off = (i > 0) ? std::abs(t.off[i - 1]) : 0.0;
        const double hi_off = (i < m - 1) ? std::abs(t.off[i]) : 0.0;
        glo = std::min(glo, (t.diag[i] - lo_off - hi_off) / t.weight[i]);
        ghi = std::max(ghi, (t.diag[i] + lo_off + hi_off) / t.weight[i]);
    }
    std::vector<double> out(count);
    double lo_start = glo;
    for (int k = 0; k < count; ++k) {
        double lo = lo_start, hi = ghi;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi)
                break;
            if (sturm_count(t, mid) <= k)
                lo = mid;
            else
                hi = mid;
            const double tol = 1e-12 + 4.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::abs(lo), std::abs(hi));
            if (hi - lo <= tol)
                break;
        }
        out[k] = 0.5 * (lo + hi);
        lo_start = lo;   // eigenvalues are ordered
    }
    return out;
}

// one inverse-iteration vector at shift sigma, for the boundary-decay check
std::vector<double> inverse_iteration(const Tridiag& t, double sigma, std::uint64_t seed) {
    const int m = static_cast<int>(t.diag.size());
    std::vector<double> bvec(m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < m; ++i)
        bvec[i] = u(rng);

    for (int pass = 0; pass < 3; ++pass) {
        // solve (A - sigma B) x = bvec by elimination with partial pivoting;
        // rows are carried as (column i, i+1, i+2) triples
        std::vector<double> ud(m), uu(m, 0.0), uw(m, 0.0), x = bvec;
        double cur_d = t.diag[0] - sigma * t.weight[0];
        double cur_u = (m > 1) ? t.off[0] : 0.0;
        double cur_w = 0.0;
        for (int i = 0; i + 1 < m; ++i) {
            double nxt_l = t.off[i];
            double nxt_d = t.diag[i + 1] - sigma * t.weight[i + 1];
            double nxt_u = (i + 2 < m) ? t.off[i + 1] : 0.0;
            double nxt_w = 0.0;
            if (std::abs(cur_d) < std::abs(nxt_l)) {
                std::swap(cur_d, nxt_l);
                std::swap(cur_u, nxt_d);
                std::swap(cur_w, nxt_u);
                std::swap(x[i], x[i + 1]);
            }
            const double piv = (cur_d == 0.0) ? 1e-300 : cur_d;
            const double f = nxt_l / piv;
            ud[i] = cur_d;
            uu[i] = cur_u;
            uw[i] = cur_w;
            cur_d = nxt_d - f * cur_u;
            cur_u = nxt_u - f * cur_w;
            cur_w = nxt_w;
            x[i + 1] -= f * x[i];
        }
        ud[m - 1] = cur_d;
        for (int i = m - 1; i >= 0; --i) {
            double s = x[i];
            if (i + 1 < m)
                s -= uu[i] * x[i + 1];
            if (i + 2 < m)
                s -= uw[i] * x[i + 2];
            x[i] = s / (ud[i] == 0.0 ? 1e-300 : ud[i]);
        }
        double nrm = 0.0;
        for (double v : x)
            nrm += v * v;
        nrm = std::sqrt(nrm);
        for (int i = 0; i < m; ++i)
            bvec[i] = x[i] / nrm;
    }
    return bvec;
}

void check_boundary_decay(const QuantumParams& p, const Tridiag& t, double ground) {
    if (p.lambda > 0.0 && ground >= continuum_bottom(p))
        return;   // not a bound state; the box truncates the continuum anyway
    const auto v = inverse_iteration(t, ground + 1e-9 * std::max(1.0, std::abs(ground)), 12345);
    double vmax = 0.0;
    for (double x : v)
        vmax = std::max(vmax, std::abs(x));
    if (std::abs(v.back()) > 1e-8 * vmax)
        throw GridTooCoarse("radial grid: rho_max too small, ground state does not decay");
}

} // namespace

RadialGrid default_grid(const QuantumParams& p, int n_max, int l) {
    if (!(p.omega > 0.0) || !(p.hbar > 0.0))
        throw ConfigError("omega and hbar must be positive");
    if (p.lambda < 0.0)
        throw RegimeError("discrete spectrum requires lambda > 0");
    const double e_top = reference_level(p, n_max);
    // asymptotic decay rate: u'' ~ (omega^2 - 2 lambda E) rho^2 u / hbar^2
    const double kap2 = p.omega * p.omega - 2.0 * p.lambda * e_top;
    const double turn = std::sqrt(2.0 * e_top / kap2);
    RadialGrid grid;
    grid.l = l;
    grid.rho_max = 2.5 * turn + 9.0 * p.hbar / std::sqrt(kap2);
    const double k_local = std::sqrt(2.0 * e_top) / p.hbar;
    grid.points = std::max(400, static_cast<int>(grid.rho_max * k_local / 0.05));
    return grid;
}

std::vector<double> radial_solve(const QuantumParams& p, const RadialGrid& grid, int count) {
    if (p.lambda < 0.0)
        throw RegimeError("radial_solve: lambda < 0 has no discrete oscillator spectrum");
    if (p.N < 2)
        throw ConfigError("radial_solve: N >= 2 required");
    if (grid.points < 200)
        throw GridTooCoarse("radial_solve: at least 200 grid points required");
    if (!(grid.rho_max > 0.0) || grid.l < 0 || count < 1)
        throw ConfigError("radial_solve: invalid grid");
    const Tridiag t = build_pencil(p, grid);
    auto values = sturm_lowest(t, count);
    if (grid.l == 0)
        check_boundary_decay(p, t, values.front());
    return values;
}

std::vector<RichardsonLevel> radial_solve_richardson(const QuantumParams& p,
                                                     const RadialGrid& grid, int count) {
    const auto coarse = radial_solve(p, grid, count);
    RadialGrid fine = grid;
    fine.points = 2 * grid.points;
    const auto refined = radial_solve(p, fine, count);
    const double dxc = grid.rho_max / (grid.points + 0.5);
    const double dxf = grid.rho_max / (fine.points + 0.5);
    const double r2 = sq(dxc / dxf);
    std::vector<RichardsonLevel> out(count);
    for (int k = 0; k < count; ++k) {
        out[k].value = (r2 * refined[k] - coarse[k]) / (r2 - 1.0);
        out[k].correction = std::abs(out[k].value - refined[k]);
    }
    return out;
}

double symmetry_check(const QuantumParams& p, const RadialGrid& grid) {
    const Tridiag t = build_pencil(p, grid);
    // elementwise asymmetry of B (B^-1 A), relative to the matrix scale
    double asym = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < t.diag.size(); ++i)
        scale = std::max(scale, std::abs(t.diag[i]));
    for (std::size_t i = 0; i + 1 < t.diag.size(); ++i) {
        const double upper = t.weight[i] * (t.off[i] / t.weight[i]);
        const double lower = t.weight[i + 1] * (t.off[i] / t.weight[i + 1]);
        asym = std::max(asym, std::abs(upper - lower));
        scale = std::max(scale, std::abs(t.off[i]));
    }
    return asym / scale;
}

double bilinear_symmetry_residual(const QuantumParams& p, const RadialGrid& grid,
                                  std::uint64_t seed) {
    const Tridiag t = build_pencil(p, grid);
    const int m = static_cast<int>(t.diag.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(m), v(m);
    for (int i = 0; i < m; ++i) {
        u[i] = dist(rng);
        v[i] = dist(rng);
    }
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int i = 0; i < m; ++i) {
            double s = t.diag[i] * x[i];
            if (i > 0)
                s += t.off[i - 1] * x[i - 1];
            if (i + 1 < m)
                s += t.off[i] * x[i + 1];
            y[i] = s / t.weight[i];   // H = B^-1 A
        }
    };
    std::vector<double> Hu(m), Hv(m);
    apply(u, Hu);
    apply(v, Hv);
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (int i = 0; i < m; ++i) {
        lhs += u[i] * Hv[i] * t.weight[i];
        rhs += Hu[i] * v[i] * t.weight[i];
        scale += std::abs(u[i] * Hv[i] * t.weight[i]);
    }
    return std::abs(lhs - rhs) / std::max(scale, 1e-30);
}

SpectrumResult assemble_spectrum(const QuantumParams& p, int n_max,
                                 const AssemblyPolicy& policy) {
    if (p.lambda < 0.0)
        throw RegimeError("assemble_spectrum: lambda < 0 not solved");
    if (n_max < 0)
        throw ConfigError("assemble_spectrum: n_max >= 0 required");

    // independent eigenproblems per angular sector
    struct Sector {
        int l;
        std::vector<RichardsonLevel> levels;
    };
    std::vector<Sector> sectors(n_max + 1);
    const int threads = policy.threads > 0
                            ? policy.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> tasks;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int l = next.fetch_add(1); l <= n_max; l = next.fetch_add(1)) {
            const int count = (n_max - l) / 2 + 1;
            sectors[l].l = l;
            sectors[l].levels = radial_solve_richardson(p, default_grid(p, n_max, l), count);
        }
    };
    if (threads > 1) {
        for (int i = 0; i < threads; ++i)
            tasks.push_back(std::async(std::launch::async, worker));
        for (auto& task : tasks)
            task.get();
    } else {
        worker();
    }

    SpectrumResult result;
    result.params = p;
    result.continuum = p.lambda > 0.0 ? continuum_bottom(p)
                                      : std::numeric_limits<double>::infinity();

    // analytic-collision guard for the nearest-level assignment below
    for (int n = 0; n + 1 <= n_max; ++n) {
        const double a = reference_level(p, n), b = reference_level(p, n + 1);
        if (std::abs(b - a) < policy.cluster_tol * std::max(std::abs(a), std::abs(b)))
            throw LevelMismatch("assemble_spectrum: adjacent analytic levels closer than "
                                "the clustering resolution");
    }

    std::vector<double> numeric_sum(n_max + 1, 0.0);
    std::vector<std::uint64_t> numeric_count(n_max + 1, 0);
    std::vector<std::uint64_t> found(n_max + 1, 0);
    for (const auto& sector : sectors) {
        for (std::size_t k = 0; k < sector.levels.size(); ++k) {
            const double value = sector.levels[k].value;
            const double correction = sector.levels[k].correction;
            // assign to the nearest analytic level
            int best = 0;
            double best_err = std::numeric_limits<double>::infinity();
            for (int n = 0; n <= n_max + 2; ++n) {
                const double err = std::abs(value - reference_level(p, n));
                if (err < best_err) {
                    best_err = err;
                    best = n;
                }
            }
            const int expected_n = 2 * static_cast<int>(k) + sector.l;
            if (policy.verify) {
                const double scale = std::max(std::abs(reference_level(p, expected_n)),
                                              p.hbar * p.omega);
                if (correction > 100.0 * policy.level_tol * scale)
                    throw GridTooCoarse("assemble_spectrum: Richardson correction too large "
                                        "for the requested tolerance");
                if (best != expected_n || best_err > policy.level_tol * scale)
                    throw LevelMismatch("assemble_spectrum: numeric level (l=" +
                                        std::to_string(sector.l) +
                                        ", k=" + std::to_string(k) + ") does not match the "
                                        "analytic spectrum");
            }
            if (best <= n_max) {
                numeric_sum[best] += value;
                ++numeric_count[best];
                found[best] += harmonic_dimension(p.N, sector.l);
            }
        }
    }

    for (int n = 0; n <= n_max; ++n) {
        SpectrumLevel lvl;
        lvl.n = n;
        lvl.analytic = reference_level(p, n);
        lvl.numeric = numeric_count[n] ? numeric_sum[n] / numeric_count[n] : 0.0;
        lvl.expected_degeneracy = degeneracy(p.N, n);
        lvl.found_degeneracy = found[n];
        if (policy.verify && lvl.found_degeneracy != lvl.expected_degeneracy)
            throw DegeneracyMismatch("assemble_spectrum: level " + std::to_string(n) +
                                     " multiplicity " + std::to_string(lvl.found_degeneracy) +
                                     " != " + std::to_string(lvl.expected_degeneracy));
        result.levels.push_back(lvl);
    }
    return result;
}

} // namespace bertrand
