#include "bertrand/numerics.hpp"
#include "bertrand/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace bertrand {

namespace {

// 15-point Kronrod nodes/weights on [-1,1]; the embedded 7-point Gauss rule
// lives on the odd-index nodes.
constexpr double kx[15] = {
    -0.99145537112081263921, -0.94910791234275852453, -0.86486442335976907279,
    -0.74153118559939443986, -0.58608723546769113029, -0.40584515137739716691,
    -0.20778495500789846760,  0.0,                     0.20778495500789846760,
     0.40584515137739716691,  0.58608723546769113029,  0.74153118559939443986,
     0.86486442335976907279,  0.94910791234275852453,  0.99145537112081263921};
constexpr double kw[15] = {
    0.022935322010529224964, 0.063092092629978553291, 0.10479001032225018384,
    0.14065325971552591875,  0.16900472663926790283,  0.19035057806478540991,
    0.20443294007529889241,  0.20948214108472782801,  0.20443294007529889241,
    0.19035057806478540991,  0.16900472663926790283,  0.14065325971552591875,
    0.10479001032225018384,  0.063092092629978553291, 0.022935322010529224964};
constexpr double gw[7] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776, 0.38183005050511894495, 0.27970539148927666790,
    0.12948496616886969327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double fx[15];
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        fx[i] = f(c + hw * kx[i]);
        k += kw[i] * fx[i];
        if (i % 2 == 1)
            g += gw[i / 2] * fx[i];
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = k * hw;
    // QUADPACK-style estimate: |K15-G7| sharpened against the deviation
    // integral resasc
    const double mean = 0.5 * k;
    double resasc = 0.0;
    for (int i = 0; i < 15; ++i)
        resasc += kw[i] * std::abs(fx[i] - mean);
    resasc *= std::abs(hw);
    const double diff = std::abs((k - g) * hw);
    p.error = diff;
    if (resasc != 0.0 && diff != 0.0)
        p.error = resasc * std::min(1.0, std::pow(200.0 * diff / resasc, 1.5));
    return p;
}

} // namespace

double integrate(const Fn1& f, double a, double b, const QuadratureOptions& opt) {
    if (a == b)
        return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // global adaptivity: keep splitting the worst panel until the summed
    // error estimate fits the budget
    std::priority_queue<Panel> heap;
    heap.push(gk15(f, a, b));
    double total = heap.top().value;
    double err = heap.top().error;
    const int max_panels = 1 << std::min(opt.max_depth, 20);
    while (true) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (err <= tol)
            break;
        if (static_cast<int>(heap.size()) >= max_panels)
            throw QuadratureError("integrate: tolerance not met with panel budget");
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureError("integrate: panel collapsed below machine resolution");
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    return sign * total;
}

double integrate_to_infinity(const Fn1& f, double a, const QuadratureOptions& opt) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double r = a + t / om;
        return f(r) / (om * om);
    };
    // stop a hair short of t=1; the mapped integrand must decay like 1/r^2 or
    // faster for this to be exact in the limit
    return integrate(g, 0.0, 1.0 - 1e-14, opt);
}

double brent(const Fn1& f, double a, double b, double tol_abs, double tol_rel) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw Error("brent: interval does not bracket a root");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                            0.5 * std::max(tol_abs, tol_rel * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0)
            return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw ConvergenceError("brent: too many iterations");
}

std::vector<std::pair<double, double>> sign_change_brackets(
    const Fn1& f, double lo, double hi, int points, bool log_spaced) {
    std::vector<std::pair<double, double>> out;
    double xprev = lo, fprev = f(lo);
    for (int i = 1; i <= points; ++i) {
        const double t = static_cast<double>(i) / points;
        const double x = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
        const double fx = f(x);
        if (fprev == 0.0 || fprev * fx < 0.0)
            out.emplace_back(xprev, x);
        xprev = x;
        fprev = fx;
    }
    return out;
}

double deriv_central(const Fn1& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

} // namespace bertrand
