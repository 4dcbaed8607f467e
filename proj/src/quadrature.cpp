#include "momdet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "momdet/errors.hpp"

namespace momdet {

namespace {

// 21-point Kronrod abscissae; the odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600579471758, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

double checked(const RealFn& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw NumericError("integrand is not finite at x = " + std::to_string(x));
    }
    return v;
}

// QUADPACK qk21 rule with its error heuristic.
Panel gauss_kronrod_21(const RealFn& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 10> f1{}, f2{};
    const double fc = checked(f, centre);
    double resg = 0.0;
    double resk = wgk[10] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        f1[j] = checked(f, centre - dx);
        f2[j] = checked(f, centre + dx);
        const double pair = f1[j] + f2[j];
        resk += wgk[j] * pair;
        resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * pair;
    }
    const double reskh = 0.5 * resk;
    double resasc = wgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j) {
        resasc += wgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    const double ah = std::abs(half);
    resasc *= ah;
    resabs *= ah;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * half, err};
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw ParameterError("integrate: limits must be finite");
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    const int initial = std::max(1, opts.initial_panels);
    for (int i = 0; i < initial; ++i) {
        const double lo = a + (b - a) * i / initial;
        const double hi = (i + 1 == initial) ? b : a + (b - a) * (i + 1) / initial;
        Panel p = gauss_kronrod_21(f, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int panels = initial;
    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && panels < opts.max_panels) {
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            std::abs(worst.b - worst.a) <= 4.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            break;  // cannot subdivide further
        }
        heap.pop();
        const Panel left = gauss_kronrod_21(f, worst.a, mid);
        const Panel right = gauss_kronrod_21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // re-sum to avoid drift from incremental updates
    total = 0.0;
    total_err = 0.0;
    for (auto copy = heap; !copy.empty(); copy.pop()) {
        total += copy.top().value;
        total_err += copy.top().error;
    }
    out.value = total;
    out.est_error = total_err;
    out.panels = panels;
    out.converged = total_err <= tolerance();
    return out;
}

QuadResult integrate_or_throw(const RealFn& f, double a, double b, const QuadOptions& opts,
                              const char* what) {
    QuadResult r = integrate(f, a, b, opts);
    if (!r.converged) {
        throw NumericError(std::string(what) + ": quadrature did not converge on [" + std::to_string(a) +
                           ", " + std::to_string(b) + "] (value " + std::to_string(r.value) +
                           ", error estimate " + std::to_string(r.est_error) + ", panels " +
                           std::to_string(r.panels) + ")");
    }
    return r;
}

namespace {

double safe_eval(const RealFn& psi, double t) {
    const double v = psi(t);
    if (std::isnan(v)) throw NumericError("log-integrand is NaN at t = " + std::to_string(t));
    return v;
}

// Maximizes a unimodal psi on [lo, hi] (either may be infinite).
double locate_peak(const RealFn& psi, double lo, double hi, double guess) {
    double t = std::clamp(guess, std::isfinite(lo) ? lo : -1e300, std::isfinite(hi) ? hi : 1e300);
    const double probe = 1e-3 * std::max(1.0, std::abs(t));
    const double up = (t + probe <= hi) ? safe_eval(psi, t + probe) : -std::numeric_limits<double>::infinity();
    const double down = (t - probe >= lo) ? safe_eval(psi, t - probe) : -std::numeric_limits<double>::infinity();
    const double here = safe_eval(psi, t);
    if (here >= up && here >= down) {
        // already near the top; refine in a small bracket
        double a = std::max(lo, t - probe), b = std::min(hi, t + probe);
        for (int i = 0; i < 60; ++i) {
            const double m1 = a + 0.381966011250105 * (b - a);
            const double m2 = b - 0.381966011250105 * (b - a);
            if (safe_eval(psi, m1) < safe_eval(psi, m2)) a = m1; else b = m2;
        }
        return 0.5 * (a + b);
    }
    const double dir = up > down ? 1.0 : -1.0;
    double step = std::max(0.25, probe);
    double prev = t, prev_val = here;
    double before = t;
    for (int i = 0; i < 2000; ++i) {
        double next = prev + dir * step;
        const double limit = dir > 0 ? hi : lo;
        bool at_limit = false;
        if ((dir > 0 && next >= limit) || (dir < 0 && next <= limit)) {
            next = limit;
            at_limit = true;
        }
        const double v = safe_eval(psi, next);
        if (v < prev_val) {
            // bracket [before, next] contains the peak
            double a = std::min(before, next), b = std::max(before, next);
            for (int j = 0; j < 100 && (b - a) > 1e-9 * std::max(1.0, std::abs(a)); ++j) {
                const double m1 = a + 0.381966011250105 * (b - a);
                const double m2 = b - 0.381966011250105 * (b - a);
                if (safe_eval(psi, m1) < safe_eval(psi, m2)) a = m1; else b = m2;
            }
            return 0.5 * (a + b);
        }
        if (at_limit) return next;
        before = prev;
        prev = next;
        prev_val = v;
        step *= 1.6;
    }
    throw NumericError("log_integrate_exp: could not locate the peak of the integrand");
}

// Walks away from the peak until psi has dropped by `drop`, or the limit is hit.
double walk_out(const RealFn& psi, double peak, double peak_val, double limit, double dir, double drop) {
    double step = 0.5;
    double t = peak;
    for (int i = 0; i < 4000; ++i) {
        double next = t + dir * step;
        if ((dir > 0 && next >= limit) || (dir < 0 && next <= limit)) return limit;
        if (safe_eval(psi, next) < peak_val - drop) return next;
        t = next;
        step *= 1.5;
    }
    throw NumericError("log_integrate_exp: integrand does not decay");
}

}  // namespace

LogQuadResult log_integrate_exp(const RealFn& psi, double lo, double hi, double rel_tol, double guess) {
    if (!(lo < hi)) throw ParameterError("log_integrate_exp: need lo < hi");
    const double peak = locate_peak(psi, lo, hi, guess);
    const double top = safe_eval(psi, peak);
    if (!std::isfinite(top)) throw NumericError("log_integrate_exp: non-finite peak value");
    constexpr double drop = 60.0;
    const double a = walk_out(psi, peak, top, lo, -1.0, drop);
    const double b = walk_out(psi, peak, top, hi, +1.0, drop);

    auto shifted = [&](double t) {
        const double v = psi(t);
        if (std::isnan(v)) throw NumericError("log-integrand is NaN");
        return v == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(v - top);
    };
    QuadOptions opts;
    opts.rel_tol = rel_tol;
    opts.initial_panels = 16;
    opts.max_panels = 8000;
    const QuadResult body = integrate_or_throw(shifted, a, b, opts, "log_integrate_exp");
    if (!(body.value > 0.0)) throw NumericError("log_integrate_exp: non-positive integral");

    // concave tails: int_b^inf e^psi <= e^psi(b) / |psi'(b)|
    auto tail = [&](double edge, double dir) {
        const double h = 1e-5 * std::max(1.0, std::abs(edge));
        const double slope = (safe_eval(psi, edge + dir * h) - safe_eval(psi, edge)) / h;  // along dir
        const double v = std::exp(safe_eval(psi, edge) - top);
        if (!(slope < 0.0)) throw NumericError("log_integrate_exp: tail is not decaying");
        return v / -slope;
    };
    double tail_mass = 0.0;
    if (a > lo) tail_mass += tail(a, -1.0);
    if (b < hi) tail_mass += tail(b, +1.0);

    LogQuadResult out;
    out.log_value = top + std::log(body.value + tail_mass);
    out.rel_error = (body.est_error + tail_mass) / body.value;
    out.peak = peak;
    return out;
}

}  // namespace momdet
