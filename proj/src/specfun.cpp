#include "momdet/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "momdet/errors.hpp"

namespace momdet {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double euler_gamma = 0.57721566490153286060651209008240243;

void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                          std::to_string(x));
    }
}

// Sum of the asymptotic series 1 - 1/(8x) + 9/(2!(8x)^2) - ..., truncated before the
// terms start to grow. Returns the sum and the magnitude of the first omitted term.
std::pair<double, double> k0_asymptotic_sum(double x) {
    double sum = 1.0;
    double term = 1.0;
    double omitted = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * odd * odd / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) {
            omitted = std::abs(next);
            break;
        }
        sum += next;
        term = next;
        omitted = std::abs(term);
        if (std::abs(term) < 0.1 * eps * std::abs(sum)) break;
    }
    return {sum, omitted};
}

double trapezoid_k0_scaled(double x, double h) {
    // integrand exp(-x (cosh u - 1)) with cosh u - 1 = 2 sinh^2(u/2)
    double sum = 0.5;
    for (int j = 1; j < 100000; ++j) {
        const double s = std::sinh(0.5 * j * h);
        const double v = std::exp(-2.0 * x * s * s);
        sum += v;
        if (v < 1e-20 * sum) break;
    }
    return h * sum;
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::series: return "series";
        case Regime::asymptotic: return "asymptotic";
        case Regime::quadrature: return "quadrature";
    }
    return "?";
}

double log_gamma(double x) {
    require_positive(x, "log_gamma");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

namespace detail {

EvalResult k0_series(double x) {
    require_positive(x, "k0_series");
    const double y = 0.25 * x * x;
    double term = 1.0;
    double i0 = 1.0;
    double harmonic = 0.0;
    double s = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= y / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        s += term * harmonic;
        if (term < eps * i0 * 0.01 && term * harmonic < eps * s * 0.01) break;
    }
    const double lead = -(std::log(0.5 * x) + euler_gamma) * i0;
    const double value = lead + s;
    return {value, 8.0 * eps * (std::abs(lead) + s), Regime::series};
}

EvalResult k0_quadrature_scaled(double x) {
    require_positive(x, "k0_quadrature_scaled");
    const double fine = trapezoid_k0_scaled(x, 0.125);
    const double coarse = trapezoid_k0_scaled(x, 0.25);
    const double err = std::max(std::abs(fine - coarse), 16.0 * eps * fine);
    return {fine, err, Regime::quadrature};
}

EvalResult k0_asymptotic_scaled(double x) {
    require_positive(x, "k0_asymptotic_scaled");
    const auto [sum, omitted] = k0_asymptotic_sum(x);
    const double pref = std::sqrt(std::numbers::pi / (2.0 * x));
    return {pref * sum, pref * (omitted + 4.0 * eps * std::abs(sum)), Regime::asymptotic};
}

}  // namespace detail

EvalResult bessel_k0_scaled(double x) {
    require_positive(x, "bessel_k0_scaled");
    if (x <= k0_series_limit) {
        auto r = detail::k0_series(x);
        const double ex = std::exp(x);
        return {r.value * ex, r.abs_error_bound * ex, r.regime};
    }
    if (x < k0_asymptotic_limit) return detail::k0_quadrature_scaled(x);
    return detail::k0_asymptotic_scaled(x);
}

EvalResult bessel_k0(double x) {
    require_positive(x, "bessel_k0");
    if (x <= k0_series_limit) return detail::k0_series(x);
    auto r = bessel_k0_scaled(x);
    const double emx = std::exp(-x);
    return {r.value * emx, r.abs_error_bound * emx, r.regime};
}

double bessel_k0_log(double x) {
    require_positive(x, "bessel_k0_log");
    if (x <= k0_series_limit) return std::log(detail::k0_series(x).value);
    if (x < k0_asymptotic_limit) return std::log(detail::k0_quadrature_scaled(x).value) - x;
    const auto [sum, omitted] = k0_asymptotic_sum(x);
    (void)omitted;
    return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log(sum);
}

namespace {

constexpr int max_gamma_iterations = 200000;

void require_gamma_args(double a, double x, const char* fn) {
    if (!(a > 0.0) || !std::isfinite(a) || !(x >= 0.0) || std::isnan(x)) {
        throw DomainError(std::string(fn) + ": need a > 0 and x >= 0");
    }
}

// ln(x^a e^-x / Gamma(a))
double log_gamma_prefactor(double a, double x) { return a * std::log(x) - x - log_gamma(a); }

// P(a,x) by its power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < max_gamma_iterations; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * eps) {
            return sum * std::exp(log_gamma_prefactor(a, x));
        }
    }
    throw NumericError("incomplete gamma series did not converge");
}

// ln of the continued fraction for Q(a,x)/prefactor; valid for x >= a + 1.
double log_gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_gamma_iterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return std::log(h);
    }
    throw NumericError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double lower_incomplete_gamma_reg(double a, double x) {
    require_gamma_args(a, x, "lower_incomplete_gamma_reg");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return std::min(1.0, gamma_p_series(a, x));
    return -std::expm1(log_upper_incomplete_gamma_reg(a, x));
}

double upper_incomplete_gamma_reg(double a, double x) {
    require_gamma_args(a, x, "upper_incomplete_gamma_reg");
    return std::exp(log_upper_incomplete_gamma_reg(a, x));
}

double log_upper_incomplete_gamma_reg(double a, double x) {
    require_gamma_args(a, x, "log_upper_incomplete_gamma_reg");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    if (x < a + 1.0) return std::log1p(-std::min(1.0, gamma_p_series(a, x)));
    return log_gamma_prefactor(a, x) + log_gamma_q_fraction(a, x);
}

NormalPdfCdf std_normal_pdf_cdf(double x) {
    if (!std::isfinite(x)) throw DomainError("std_normal_pdf_cdf: non-finite argument");
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    return {pdf, cdf};
}

double log_std_normal_cdf(double x) {
    if (std::isnan(x)) throw DomainError("log_std_normal_cdf: NaN argument");
    if (x == std::numeric_limits<double>::infinity()) return 0.0;
    if (x == -std::numeric_limits<double>::infinity()) return -std::numeric_limits<double>::infinity();
    if (x > 0.0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
    if (x > -30.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
    // Mills-ratio expansion: Phi(x) = phi(x)/|x| (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...)
    const double z = 1.0 / (x * x);
    const double series = 1.0 - z * (1.0 - z * (3.0 - z * (15.0 - z * (105.0 - z * 945.0))));
    return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(-x) + std::log(series);
}

}  // namespace momdet
