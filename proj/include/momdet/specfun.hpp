#pragma once

// Scalar special functions: log-gamma, the modified Bessel function K0,
// the regularized incomplete gamma functions and the standard normal law.
// All functions are pure and reentrant.

namespace momdet {

enum class Regime { series, asymptotic, quadrature };

const char* to_string(Regime r);

struct EvalResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
    Regime regime = Regime::series;
};

// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

// K0 is evaluated by three representations:
//   x <= k0_series_limit                      convergent I0 / harmonic-number series
//   k0_series_limit < x < k0_asymptotic_limit trapezoid rule on the integral
//                                             e^x K0(x) = int_0^inf exp(-x (cosh u - 1)) du
//   x >= k0_asymptotic_limit                  asymptotic expansion
//                                             sqrt(pi/2x) e^-x [1 - 1/(8x) + 9/(128x^2) - ...]
inline constexpr double k0_series_limit = 2.0;
inline constexpr double k0_asymptotic_limit = 18.0;

// K0(x), x > 0. Underflows to 0 for x beyond ~745; use the scaled or log variants there.
EvalResult bessel_k0(double x);

// e^x K0(x), x > 0.
EvalResult bessel_k0_scaled(double x);

// ln K0(x), x > 0; finite for every positive finite x.
double bessel_k0_log(double x);

namespace detail {
// The individual K0 representations, exposed so crossover continuity can be tested.
EvalResult k0_series(double x);
EvalResult k0_quadrature_scaled(double x);
EvalResult k0_asymptotic_scaled(double x);
}  // namespace detail

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
// a > 0, x >= 0. Series for x < a + 1, Lentz continued fraction otherwise.
double lower_incomplete_gamma_reg(double a, double x);
double upper_incomplete_gamma_reg(double a, double x);

// ln Q(a,x), accurate when Q underflows.
double log_upper_incomplete_gamma_reg(double a, double x);

struct NormalPdfCdf {
    double pdf = 0.0;
    double cdf = 0.0;
};

NormalPdfCdf std_normal_pdf_cdf(double x);

// ln Phi(x), accurate far into the lower tail.
double log_std_normal_cdf(double x);

}  // namespace momdet
