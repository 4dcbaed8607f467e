#include "momdet/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "momdet/errors.hpp"
#include "momdet/quadrature.hpp"
#include "momdet/random.hpp"
#include "momdet/specfun.hpp"

namespace momdet {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double ln2 = std::numbers::ln2;
const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string gg_name(const GGParams& p) {
    return "GG(" + fmt(p.alpha) + "," + fmt(p.beta) + "," + fmt(p.gamma) + ")";
}

void check_x(double x, const char* what) {
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError(std::string(what) + ": x must be >= 0");
}

double log_density_positive(const DistributionSpec& spec, double x) {
    const double lx = std::log(x);
    switch (spec.family()) {
        case Family::GG: {
            const GGParams& p = spec.gg_params();
            return p.log_norm_const() + (p.gamma - 1.0) * lx - p.alpha * std::pow(x, p.beta);
        }
        case Family::HalfLogistic:
            return ln2 - x - 2.0 * std::log1p(std::exp(-x));
        case Family::LogNormal01:
            return -lx - half_log_2pi - 0.5 * lx * lx;
        case Family::LogSkewNormal:
            return ln2 - lx - half_log_2pi - 0.5 * lx * lx + log_std_normal_cdf(spec.lambda() * lx);
        case Family::HalfBessel: {
            const GGParams& p = spec.gg_params();
            const double z = 2.0 * p.alpha * std::exp(0.5 * p.beta * lx);
            return ln2 + 2.0 * p.log_norm_const() - std::log(p.beta) + (p.gamma - 1.0) * lx + bessel_k0_log(z);
        }
    }
    throw ParameterError("unknown family");
}

// ln of the density of ln X at t, i.e. t + ln f(e^t).
double log_density_of_log(const DistributionSpec& spec, double t) {
    const double x = std::exp(t);
    if (x == 0.0 || x == inf) return -inf;
    return t + log_density_positive(spec, x);
}

double gg_log_survival(const GGParams& p, double x) {
    return log_upper_incomplete_gamma_reg(p.gamma / p.beta, p.alpha * std::pow(x, p.beta));
}

// Solves P(a, y) = u, switching to Q(a, y) = 1 - u in the upper half for accuracy.
double gamma_quantile(double a, double u) {
    const bool upper = u > 0.5;
    const double target = upper ? 1.0 - u : u;
    const double lga = log_gamma(a);
    auto g = [&](double y) {  // increasing in y
        return upper ? target - upper_incomplete_gamma_reg(a, y) : lower_incomplete_gamma_reg(a, y) - target;
    };
    double lo = 0.0;
    double hi = std::max(1.0, a);
    while (g(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw NumericError("gamma_quantile: cannot bracket");
    }
    // small-y expansion P(a, y) ~ y^a / Gamma(a + 1)
    double y = upper ? 0.5 * (lo + hi) : std::exp((std::log(target) + log_gamma(a + 1.0)) / a);
    if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        const double gy = g(y);
        if (gy == 0.0) return y;
        if (gy < 0.0) lo = y; else hi = y;
        const double deriv = std::exp((a - 1.0) * std::log(y) - y - lga);
        double next = (deriv > 0.0 && std::isfinite(deriv)) ? y - gy / deriv : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) <= 1e-12 * y || hi - lo <= 1e-12 * hi) return next;
        y = next;
    }
    return y;
}

double gg_quantile(const GGParams& p, double u) {
    const double y = gamma_quantile(p.gamma / p.beta, u);
    return std::pow(y / p.alpha, 1.0 / p.beta);
}

}  // namespace

void GGParams::validate() const {
    for (double v : {alpha, beta, gamma}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ParameterError("GG parameters must be finite and > 0, got " + gg_name(*this));
        }
    }
    if (!std::isfinite(log_norm_const())) throw ParameterError("GG norming constant not finite for " + gg_name(*this));
}

double GGParams::log_norm_const() const {
    return std::log(beta) + (gamma / beta) * std::log(alpha) - log_gamma(gamma / beta);
}

const char* to_string(Family f) {
    switch (f) {
        case Family::GG: return "gg";
        case Family::HalfLogistic: return "half-logistic";
        case Family::LogNormal01: return "lognormal";
        case Family::LogSkewNormal: return "log-skew-normal";
        case Family::HalfBessel: return "half-bessel";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    for (Family f : {Family::GG, Family::HalfLogistic, Family::LogNormal01, Family::LogSkewNormal,
                     Family::HalfBessel}) {
        if (name == to_string(f)) return f;
    }
    throw ParameterError("unknown family '" + name +
                         "' (expected gg, half-logistic, lognormal, log-skew-normal or half-bessel)");
}

DistributionSpec DistributionSpec::gg(GGParams p) {
    p.validate();
    DistributionSpec s;
    s.family_ = Family::GG;
    s.gg_ = p;
    return s;
}

DistributionSpec DistributionSpec::half_logistic() {
    DistributionSpec s;
    s.family_ = Family::HalfLogistic;
    return s;
}

DistributionSpec DistributionSpec::lognormal01() {
    DistributionSpec s;
    s.family_ = Family::LogNormal01;
    return s;
}

DistributionSpec DistributionSpec::log_skew_normal(double lambda) {
    if (!std::isfinite(lambda)) throw ParameterError("log-skew-normal: lambda must be finite");
    DistributionSpec s;
    s.family_ = Family::LogSkewNormal;
    s.lambda_ = lambda;
    return s;
}

DistributionSpec DistributionSpec::half_bessel(GGParams p) {
    p.validate();
    DistributionSpec s;
    s.family_ = Family::HalfBessel;
    s.gg_ = p;
    return s;
}

const GGParams& DistributionSpec::gg_params() const {
    if (family_ != Family::GG && family_ != Family::HalfBessel) {
        throw ParameterError(name() + " has no GG parameters");
    }
    return gg_;
}

std::string DistributionSpec::name() const {
    switch (family_) {
        case Family::GG: return gg_name(gg_);
        case Family::HalfLogistic: return "HalfLogistic";
        case Family::LogNormal01: return "LogNormal(0,1)";
        case Family::LogSkewNormal: return "LogSkewNormal(" + fmt(lambda_) + ")";
        case Family::HalfBessel: return "HalfBessel(" + gg_name(gg_) + ")";
    }
    return "?";
}

bool DistributionSpec::has_closed_form_moments() const {
    return family_ == Family::GG || family_ == Family::LogNormal01 || family_ == Family::HalfBessel;
}

double gg_log_moment(const GGParams& p, double s) {
    if (!(s >= 0.0)) throw DomainError("gg_log_moment: s must be >= 0");
    return log_gamma((p.gamma + s) / p.beta) - log_gamma(p.gamma / p.beta) - (s / p.beta) * std::log(p.alpha);
}

double log_density(const DistributionSpec& spec, double x) {
    check_x(x, "log_density");
    if (x > 0.0) return log_density_positive(spec, x);
    switch (spec.family()) {
        case Family::GG: {
            const GGParams& p = spec.gg_params();
            if (p.gamma == 1.0) return p.log_norm_const();
            return p.gamma < 1.0 ? inf : -inf;
        }
        case Family::HalfLogistic: return -ln2;
        case Family::LogNormal01:
        case Family::LogSkewNormal: return -inf;
        case Family::HalfBessel: return spec.gg_params().gamma <= 1.0 ? inf : -inf;
    }
    return -inf;
}

double density(const DistributionSpec& spec, double x) {
    return std::exp(log_density(spec, x));
}

double log_survival(const DistributionSpec& spec, double x) {
    check_x(x, "log_survival");
    if (x == 0.0) return 0.0;
    switch (spec.family()) {
        case Family::GG: return gg_log_survival(spec.gg_params(), x);
        case Family::HalfLogistic: return ln2 - x - std::log1p(std::exp(-x));
        case Family::LogNormal01: return log_std_normal_cdf(-std::log(x));
        case Family::LogSkewNormal:
        case Family::HalfBessel: {
            // F(x) = int_{ln x}^inf exp(t + ln f(e^t)) dt
            const double lo = std::log(x);
            double guess = 0.0;
            if (spec.family() == Family::HalfBessel) guess = 2.0 * gg_log_moment(spec.gg_params(), 1.0);
            auto psi = [&](double t) { return log_density_of_log(spec, t); };
            return log_integrate_exp(psi, lo, inf, 1e-12, std::max(lo, guess)).log_value;
        }
    }
    return 0.0;
}

double survival(const DistributionSpec& spec, double x) {
    return std::min(1.0, std::exp(log_survival(spec, x)));
}

double log_moment(const DistributionSpec& spec, double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("log_moment: s must be finite and >= 0");
    if (s == 0.0) return 0.0;
    switch (spec.family()) {
        case Family::GG: return gg_log_moment(spec.gg_params(), s);
        case Family::HalfBessel: return 2.0 * gg_log_moment(spec.gg_params(), s);
        case Family::LogNormal01: return 0.5 * s * s;
        case Family::HalfLogistic: {
            // m_s = 2 Gamma(s+1) - D with D = int x^s (2e^-x - f(x)) dx > 0; keeps the upper bound exact
            auto psi = [s](double t) {
                const double x = std::exp(t);
                if (x == inf) return -inf;
                return (s + 1.0) * t + ln2 - 2.0 * x + std::log(2.0 + std::exp(-x)) - 2.0 * std::log1p(std::exp(-x));
            };
            const LogQuadResult d = log_integrate_exp(psi, -inf, inf, 1e-13, std::log(0.5 * (s + 1.0)));
            const double upper = ln2 + log_gamma(s + 1.0);
            const double ratio = std::exp(d.log_value - upper);
            if (!(ratio < 1.0)) throw NumericError("half-logistic moment: deficit exceeds 2 Gamma(s+1) at s = " + fmt(s));
            const double value = upper + std::log1p(-ratio);
            const double lower = log_gamma(s + 1.0) - ln2;
            if (value < lower - 1e-12 * std::max(1.0, std::abs(lower))) {
                throw NumericError("half-logistic moment below Gamma(s+1)/2 at s = " + fmt(s) +
                                   " (rel. error estimate " + fmt(d.rel_error) + ")");
            }
            return value;
        }
        case Family::LogSkewNormal: {
            const double lambda = spec.lambda();
            auto psi = [s, lambda](double t) {
                return s * t + ln2 - half_log_2pi - 0.5 * t * t + log_std_normal_cdf(lambda * t);
            };
            const LogQuadResult r = log_integrate_exp(psi, -inf, inf, 1e-13, s);
            if (r.rel_error > 1e-9) {
                throw NumericError("log-skew-normal moment: quadrature error " + fmt(r.rel_error) + " at s = " + fmt(s));
            }
            return r.log_value;
        }
    }
    throw ParameterError("unknown family");
}

MomentSequence base_moments(const DistributionSpec& spec) {
    const bool exact = spec.has_closed_form_moments();
    std::optional<ExactRate> rate;
    switch (spec.family()) {
        case Family::GG:
        case Family::HalfBessel: {
            const GGParams& p = spec.gg_params();
            const double mult = spec.family() == Family::GG ? 1.0 : 2.0;
            ExactRate r;
            r.rho = mult / p.beta;
            r.log_c = mult / p.beta * std::log(1.0 / (p.alpha * p.beta));
            if (auto b = rational_from_double(p.beta)) r.rho_rational = Rational::make(static_cast<std::int64_t>(mult), 1) / *b;
            r.basis = spec.family() == Family::GG ? "Gamma((gamma+k+1)/beta)/Gamma((gamma+k)/beta) ~ (k/beta)^(1/beta)"
                                                  : "squared GG moment ratio";
            rate = r;
            break;
        }
        case Family::HalfLogistic: {
            ExactRate r;
            r.rho = 1.0;
            r.log_c = 0.0;
            r.rho_rational = Rational::make(1, 1);
            r.basis = "Gamma(k+1)/2 <= m_k <= 2 Gamma(k+1)";
            rate = r;
            break;
        }
        case Family::LogNormal01: {
            ExactRate r;
            r.rho = inf;
            r.superpolynomial = true;
            r.basis = "m_{k+1} = e^{k+1/2} m_k";
            rate = r;
            break;
        }
        case Family::LogSkewNormal: break;
    }
    const DistributionSpec copy = spec;
    return MomentSequence([copy](int k) { return log_moment(copy, k); }, exact,
                          exact ? MomentSource::closed_form : MomentSource::quadrature, spec.name(), rate);
}

double moment_tail_bound(const DistributionSpec& spec, double s, double x) {
    if (!(s >= 0.0) || !(x > 0.0)) throw DomainError("moment_tail_bound: need s >= 0 and x > 0");
    switch (spec.family()) {
        case Family::GG: {
            const GGParams& p = spec.gg_params();
            return std::exp(gg_log_moment(p, s) +
                            log_upper_incomplete_gamma_reg((p.gamma + s) / p.beta, p.alpha * std::pow(x, p.beta)));
        }
        case Family::HalfLogistic:  // f <= 2 e^-x
            return 2.0 * std::exp(log_gamma(s + 1.0) + log_upper_incomplete_gamma_reg(s + 1.0, x));
        case Family::LogNormal01:
        case Family::LogSkewNormal: {  // f_lambda <= 2 f_LN
            const double mult = spec.family() == Family::LogNormal01 ? 1.0 : 2.0;
            return mult * std::exp(0.5 * s * s + log_std_normal_cdf(s - std::log(x)));
        }
        case Family::HalfBessel: {
            // K0(z) <= sqrt(pi/2z) e^-z; with y = x^(beta/2) the majorant integrates to an incomplete gamma
            const GGParams& p = spec.gg_params();
            const double y = std::pow(x, 0.5 * p.beta);
            double a = (2.0 / p.beta) * (s + p.gamma) - 0.5;
            if (y >= 1.0) a = std::max(a, 1.0);  // y^(a-1) only grows when a is raised on y >= 1
            else if (!(a > 0.0)) throw DomainError("moment_tail_bound: half-Bessel bound needs x >= 1 here");
            const double rate = 2.0 * p.alpha;
            const double log_k = std::log(4.0 / (p.beta * p.beta)) + 2.0 * p.log_norm_const() +
                                 0.5 * std::log(std::numbers::pi / (4.0 * p.alpha));
            return std::exp(log_k + log_gamma(a) - a * std::log(rate) + log_upper_incomplete_gamma_reg(a, rate * y));
        }
    }
    return inf;
}

double half_logistic_quantile(double u) {
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("half_logistic_quantile: u must lie in [0, 1)");
    return std::log1p(u) - std::log1p(-u);
}

double quantile(const DistributionSpec& spec, double u) {
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in [0, 1)");
    switch (spec.family()) {
        case Family::GG: return u == 0.0 ? 0.0 : gg_quantile(spec.gg_params(), u);
        case Family::HalfLogistic: return half_logistic_quantile(u);
        default: throw ParameterError("quantile: no inverse CDF for " + spec.name());
    }
}

std::vector<double> sample(const DistributionSpec& spec, std::uint64_t seed, std::size_t count) {
    if (count < 1) throw ParameterError("sample: count must be >= 1");
    UniformSource rng(seed);
    std::vector<double> out;
    out.reserve(count);
    auto normal_pair = [&rng] {
        const double r = std::sqrt(-2.0 * std::log(rng.next()));
        const double th = 2.0 * std::numbers::pi * rng.next();
        return std::pair{r * std::cos(th), r * std::sin(th)};
    };
    switch (spec.family()) {
        case Family::GG:
            for (std::size_t i = 0; i < count; ++i) out.push_back(gg_quantile(spec.gg_params(), rng.next()));
            break;
        case Family::HalfLogistic:
            for (std::size_t i = 0; i < count; ++i) out.push_back(half_logistic_quantile(rng.next()));
            break;
        case Family::LogNormal01:
            while (out.size() < count) {
                const auto [z0, z1] = normal_pair();
                out.push_back(std::exp(z0));
                if (out.size() < count) out.push_back(std::exp(z1));
            }
            break;
        case Family::LogSkewNormal: {
            const double delta = spec.lambda() / std::sqrt(1.0 + spec.lambda() * spec.lambda());
            const double comp = std::sqrt(1.0 - delta * delta);
            for (std::size_t i = 0; i < count; ++i) {
                const auto [z0, z1] = normal_pair();
                out.push_back(std::exp(delta * std::abs(z0) + comp * z1));
            }
            break;
        }
        case Family::HalfBessel:
            for (std::size_t i = 0; i < count; ++i) {
                const double a = gg_quantile(spec.gg_params(), rng.next());
                out.push_back(a * gg_quantile(spec.gg_params(), rng.next()));
            }
            break;
    }
    return out;
}

std::optional<double> survival_tail_exponent(const DistributionSpec& spec) {
    switch (spec.family()) {
        case Family::GG: return spec.gg_params().beta;
        case Family::HalfLogistic: return 1.0;
        case Family::HalfBessel: return 0.5 * spec.gg_params().beta;
        default: return std::nullopt;
    }
}

std::optional<Rational> survival_tail_exponent_rational(const DistributionSpec& spec) {
    switch (spec.family()) {
        case Family::GG: return rational_from_double(spec.gg_params().beta);
        case Family::HalfLogistic: return Rational::make(1, 1);
        case Family::HalfBessel:
            if (auto b = rational_from_double(spec.gg_params().beta)) return *b / Rational::make(2, 1);
            return std::nullopt;
        default: return std::nullopt;
    }
}

}  // namespace momdet
