#pragma once

#include <functional>

namespace momdet {

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    int panels = 0;
    double tail_bound = 0.0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_panels = 4000;
    int initial_panels = 1;
};

using RealFn = std::function<double(double)>;

// Globally adaptive 21-point Gauss-Kronrod quadrature on a finite interval [a, b].
// Panels are bisected in order of decreasing error estimate until
// est_error <= max(abs_tol, rel_tol * |value|) or max_panels is reached
// (converged == false in that case). Throws NumericError if f returns a
// non-finite value.
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts = {});

// Same as integrate() but throws NumericError when the tolerance is not met.
QuadResult integrate_or_throw(const RealFn& f, double a, double b, const QuadOptions& opts,
                              const char* what);

// ln of int_{lo}^{hi} exp(psi(t)) dt for a concave (or unimodal, eventually concave)
// log-integrand psi; hi may be +infinity and lo may be -infinity. The peak is located
// first and the integral is accumulated relative to it, so the result is finite even
// when the integral itself overflows or underflows. Tails beyond the region where
// psi has dropped by 60 below its peak are bounded by exp(psi)/|psi'| (concavity).
struct LogQuadResult {
    double log_value = 0.0;
    double rel_error = 0.0;
    double peak = 0.0;  // argmax of psi
};

LogQuadResult log_integrate_exp(const RealFn& psi, double lo, double hi, double rel_tol = 1e-12,
                                double guess = 0.0);

}  // namespace momdet
