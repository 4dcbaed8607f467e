#include "momdet/criteria.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "momdet/errors.hpp"
#include "momdet/quadrature.hpp"
#include "momdet/specfun.hpp"

namespace momdet {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct LinearFit {
    Eigen::VectorXd coef;
    double residual = 0.0;
};

LinearFit least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    LinearFit fit;
    fit.coef = X.colPivHouseholderQr().solve(y);
    fit.residual = (X * fit.coef - y).cwiseAbs().maxCoeff();
    return fit;
}

std::string num(double v) { return format15(v); }

bool rational_at_most(const std::optional<Rational>& r, double value, const Rational& bound) {
    if (r) return *r <= bound;
    return value <= bound.to_double();
}

}  // namespace

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::carleman: return "carleman";
        case Criterion::cramer: return "cramer";
        case Criterion::hardy: return "hardy";
        case Criterion::growth_det: return "growth_det";
        case Criterion::growth_indet_cond2: return "growth_indet_cond2";
        case Criterion::condition2: return "condition2";
        case Criterion::krein: return "krein";
        case Criterion::theorem5: return "theorem5";
        case Criterion::proposition1: return "proposition1";
        case Criterion::moment_inequalities: return "moment_inequalities";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

Criterion criterion_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(Criterion::moment_inequalities); ++i) {
        const auto c = static_cast<Criterion>(i);
        if (s == to_string(c)) return c;
    }
    throw ParameterError("unknown criterion '" + s + "'");
}

Status status_from_string(const std::string& s) {
    for (Status st : {Status::holds, Status::fails, Status::inconclusive}) {
        if (s == to_string(st)) return st;
    }
    throw ParameterError("unknown status '" + s + "'");
}

std::string format15(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

double parse15(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParameterError("not a decimal number: '" + s + "'");
    return v;
}

double quantize15(double v) {
    if (!std::isfinite(v)) return v;
    return parse15(format15(v));
}

double Evidence::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ParameterError("evidence has no key '" + key + "'");
    return it->second;
}

// ---------------------------------------------------------------------------------------------
// growth rate

RateEstimate estimate_growth_rate(const MomentSequence& seq, int k_lo, int k_hi, double rho_band) {
    if (k_lo < 1 || k_hi - k_lo < 10) {
        throw ParameterError("rate window [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) +
                             "] must satisfy k_lo >= 1 and k_hi - k_lo >= 10");
    }
    const std::vector<double> lm = seq.table(k_hi);
    const int m = k_hi - k_lo;
    Eigen::MatrixXd X(m, 3);
    Eigen::VectorXd d(m);
    for (int i = 0; i < m; ++i) {
        const int k = k_lo + i;
        d(i) = lm[k + 1] - lm[k];
        X(i, 0) = std::log(k + 1.0);
        X(i, 1) = 1.0;
        X(i, 2) = 1.0 / (k + 1.0);
    }
    const LinearFit fit = least_squares(X, d);

    RateEstimate r;
    r.k_lo = k_lo;
    r.k_hi = k_hi;
    r.residual = fit.residual;
    r.fitted_rho = fit.coef(0);
    r.fitted_log_c = fit.coef(1);
    r.rho = r.fitted_rho;
    r.log_c = r.fitted_log_c;

    // local log-log slopes on the first and last thirds of the window
    const int third = std::max(1, m / 3);
    auto slope = [&](int i, int j) { return (d(j) - d(i)) / (X(j, 0) - X(i, 0)); };
    const double first = slope(0, third);
    const double last = slope(m - 1 - third, m - 1);
    const bool super_fit = last > 1.25 * first && last > 2.0 + rho_band;

    if (const auto& ex = seq.exact_rate()) {
        r.exact = true;
        r.superpolynomial = ex->superpolynomial;
        r.rho = ex->superpolynomial ? inf : ex->rho;
        r.log_c = ex->superpolynomial ? inf : ex->log_c;
        r.rho_rational = ex->rho_rational;
    } else if (super_fit) {
        r.superpolynomial = true;
        r.rho = inf;
        r.log_c = inf;
    }
    return r;
}

RateSide compare_rate_to_two(const RateEstimate& r, double rho_band) {
    if (r.superpolynomial) return RateSide::above_two;
    if (r.exact) {
        return rational_at_most(r.rho_rational, r.rho, Rational::make(2, 1)) ? RateSide::at_most_two
                                                                             : RateSide::above_two;
    }
    if (r.rho < 2.0 - rho_band) return RateSide::at_most_two;
    if (r.rho > 2.0 + rho_band) return RateSide::above_two;
    return RateSide::boundary;
}

int max_det_power_from_rate(double rho) {
    if (!(rho > 0.0)) throw ParameterError("max_det_power_from_rate: rho must be > 0");
    if (std::isinf(rho)) return 0;
    return std::max(0, static_cast<int>(std::floor(2.0 / rho + 1e-12)));
}

// ---------------------------------------------------------------------------------------------
// Carleman, Hardy, Cramer

CriterionOutcome carleman_classify(const MomentSequence& seq, int K, double tau_band) {
    if (K < 30) throw ParameterError("carleman_classify: K must be >= 30");
    CriterionOutcome out;
    out.criterion = Criterion::carleman;
    out.cited = "Carleman's condition";
    const std::vector<double> lm = seq.table(K);
    double partial = 0.0;
    for (int k = 1; k <= K; ++k) partial += std::exp(-lm[k] / (2.0 * k));

    const int k0 = std::max(2, K / 3);
    const int m = K - k0 + 1;
    Eigen::MatrixXd X(m, 4);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        const double k = k0 + i;
        y(i) = -lm[k0 + i] / (2.0 * k);
        X(i, 0) = std::log(k);
        X(i, 1) = 1.0;
        X(i, 2) = std::log(k) / k;
        X(i, 3) = 1.0 / k;
    }
    const LinearFit fit = least_squares(X, y);
    const double tau = -fit.coef(0);
    out.evidence.set("partial_sum", partial);
    out.evidence.set("K", K);
    out.evidence.set("tau", tau);
    out.evidence.set("residual", fit.residual);
    out.evidence.set("last_term", std::exp(-lm[K] / (2.0 * K)));

    const RateEstimate rate = estimate_growth_rate(seq, k0, K);
    if (rate.superpolynomial) {
        out.status = Status::fails;
        out.evidence.set("tau_exact", inf);
        out.reason = "terms decay faster than any power of k (superpolynomial moment growth)";
        return out;
    }
    if (rate.exact) {
        // rho <= 2 gives m_k <= C^k (k!)^2, terms >= c/k; rho > 2 gives terms <= c k^(-rho/2)
        out.evidence.set("tau_exact", rate.rho / 2.0);
        out.status = rational_at_most(rate.rho_rational, rate.rho, Rational::make(2, 1)) ? Status::holds
                                                                                         : Status::fails;
        return out;
    }
    if (tau <= 1.0 - tau_band) {
        out.status = Status::holds;
    } else if (tau > 1.0 + tau_band && fit.residual < 1e-2) {
        out.status = Status::fails;
    } else {
        out.status = Status::inconclusive;
        out.reason = "term decay exponent tau = " + num(tau) + " inside the band (1 - " + num(tau_band) + ", 1 + " +
                     num(tau_band) + "] or fit residual " + num(fit.residual) + " too large";
    }
    return out;
}

CriterionOutcome hardy_fit(const MomentSequence& seq, double a, int K, double tau_band) {
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("hardy_fit: a must lie in (0, 1]");
    if (K < 30) throw ParameterError("hardy_fit: K must be >= 30");
    CriterionOutcome out;
    out.criterion = a == 1.0 ? Criterion::cramer : Criterion::hardy;
    out.cited = "Lemma 3";
    const std::vector<double> lm = seq.table(K);
    std::vector<double> D(K + 1, 0.0);
    double c_head = 0.0, c_full = 0.0;
    for (int k = 1; k <= K; ++k) {
        D[k] = (lm[k] - log_gamma(k / a + 1.0)) / k;
        const double c = std::exp(D[k]);
        c_full = std::max(c_full, c);
        if (k <= K / 2) c_head = std::max(c_head, c);
    }
    const int k0 = std::max(2, K / 3);
    const int m = K - k0 + 1;
    Eigen::MatrixXd X(m, 4);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        const double k = k0 + i;
        y(i) = D[k0 + i];
        X(i, 0) = std::log(k);
        X(i, 1) = 1.0;
        X(i, 2) = std::log(k) / k;
        X(i, 3) = 1.0 / k;
    }
    const LinearFit fit = least_squares(X, y);
    const double sigma = fit.coef(0);  // D(k) ~ (rho - 1/a) ln k
    out.evidence.set("a", a);
    out.evidence.set("c0", c_full);
    out.evidence.set("c0_head", c_head);
    out.evidence.set("K", K);
    out.evidence.set("slope", sigma);

    const RateEstimate rate = estimate_growth_rate(seq, k0, K);
    if (rate.superpolynomial) {
        out.status = Status::fails;
        out.reason = "c0(k) grows without bound (superpolynomial moment growth)";
        return out;
    }
    if (rate.exact) {
        const auto inv_a = rational_from_double(1.0 / a);
        const bool ok = (rate.rho_rational && inv_a) ? *rate.rho_rational <= *inv_a : rate.rho <= 1.0 / a;
        out.evidence.set("rho_exact", rate.rho);
        out.status = ok ? Status::holds : Status::fails;
        return out;
    }
    const double band = 2.0 * tau_band;
    if (sigma < -band) {
        out.status = Status::holds;
    } else if (sigma > band) {
        out.status = Status::fails;
    } else if (c_full <= 1.01 * c_head) {
        out.status = Status::holds;
    } else {
        out.status = Status::inconclusive;
        out.reason = "c0(k) still rising at k = " + std::to_string(K) + " (slope " + num(sigma) + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// L_f(x) = -x f'(x) / f(x) increasing to infinity

std::function<double(double)> analytic_L_power(const DistributionSpec& base, int n) {
    const double nn = n;
    switch (base.family()) {
        case Family::GG: {
            const GGParams p = base.gg_params();
            return [p, nn](double u) {
                return 1.0 - p.gamma / nn + (p.alpha * p.beta / nn) * std::exp(p.beta * u / nn);
            };
        }
        case Family::HalfLogistic:
            return [nn](double u) {
                const double w = std::exp(u / nn);
                const double e = std::exp(-w);
                return 1.0 - 1.0 / nn + w / nn - (2.0 * w / nn) * e / (1.0 + e);
            };
        case Family::LogNormal01:
            return [nn](double u) { return 1.0 + u / (nn * nn); };
        case Family::LogSkewNormal: {
            const double lambda = base.lambda();
            return [nn, lambda](double u) {
                const double z = lambda * u / nn;
                const double mills = std::exp(-0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) - log_std_normal_cdf(z));
                return 1.0 + u / (nn * nn) - (lambda / nn) * mills;
            };
        }
        case Family::HalfBessel: return {};
    }
    return {};
}

CriterionOutcome check_condition2(const Condition2Input& in, double bound) {
    CriterionOutcome out;
    out.criterion = Criterion::condition2;
    out.cited = "Theorem 4";
    if (!(in.x_min > 0.0)) throw ParameterError("check_condition2: x_min must be > 0");
    const bool analytic = static_cast<bool>(in.analytic_L_log);
    auto L = [&](double u) {
        if (analytic) return in.analytic_L_log(u);
        const double x = std::exp(u);
        auto lf = [&](double t) {
            const double v = in.log_density(t);
            if (std::isnan(v)) throw DomainError("check_condition2: density not positive at x = " + num(t));
            return v;
        };
        auto D = [&](double h) { return (lf(x + h) - lf(x - h)) / (2.0 * h); };
        const double h = 1e-5 * x;
        return -x * (4.0 * D(0.5 * h) - D(h)) / 3.0;
    };
    const double u0 = std::log(in.x_min);
    const double u_cap = analytic ? u0 + 1e6 : std::log(1e300);
    double span = std::log(1e3);
    while (u0 + span < u_cap && !(L(u0 + span) > bound)) span *= 2.0;
    const double u_end = std::min(u0 + span, u_cap);

    constexpr int N = 64;
    std::vector<double> vals(N);
    for (int i = 0; i < N; ++i) vals[i] = L(u0 + (u_end - u0) * i / (N - 1));
    bool increasing = true;
    for (int i = N / 2; i + 1 < N; ++i) increasing = increasing && vals[i + 1] > vals[i];
    out.evidence.set("L_end", vals.back());
    out.evidence.set("L_start", vals.front());
    out.evidence.set("log10_x_end", u_end / std::log(10.0));
    out.evidence.set("bound", bound);
    out.evidence.set("analytic", analytic ? 1.0 : 0.0);
    if (!increasing) {
        out.status = Status::fails;
        out.reason = "L_f is not increasing on the upper half of the grid";
    } else if (vals.back() > bound) {
        out.status = Status::holds;
    } else {
        out.status = Status::inconclusive;
        out.reason = "L_f increasing but only reaches " + num(vals.back()) + " < " + num(bound) + " by the grid end";
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Krein

std::optional<KreinTailModel> krein_model_power(const DistributionSpec& base, int n) {
    const double nn = n;
    switch (base.family()) {
        case Family::GG: {
            const GGParams& p = base.gg_params();
            return KreinTailModel{p.alpha, p.beta / nn, p.gamma / nn - 1.0, 0.0};
        }
        case Family::HalfLogistic: return KreinTailModel{1.0, 1.0 / nn, 1.0 / nn - 1.0, 0.0};
        case Family::LogNormal01: return KreinTailModel{0.0, 0.0, -1.0, 0.5 / (nn * nn)};
        case Family::LogSkewNormal:
            if (base.lambda() >= 0.0) return KreinTailModel{0.0, 0.0, -1.0, 0.5 / (nn * nn)};
            return std::nullopt;
        case Family::HalfBessel: {
            const GGParams& p = base.gg_params();
            return KreinTailModel{2.0 * p.alpha, p.beta / (2.0 * nn), (p.gamma - p.beta / 4.0) / nn - 1.0, 0.0};
        }
    }
    return std::nullopt;
}

CriterionOutcome krein_quantity(const KreinInput& in) {
    CriterionOutcome out;
    out.criterion = Criterion::krein;
    out.cited = "Krein's condition";
    const double X = in.x_max;
    const double delta = in.delta;
    if (!(X > 1.0) || !(delta > 0.0 && delta < 1.0)) throw ParameterError("krein_quantity: need x_max > 1, 0 < delta < 1");
    auto neg_log_g = [&](double x) {
        const double v = -in.log_density(x);
        if (std::isnan(v)) throw DomainError("krein_quantity: density not defined at x = " + num(x));
        return v;
    };

    // (0, delta]: -ln g(y^2) ~ A + e ln(y / delta)
    const double h = 1e-3;
    const double A = neg_log_g(delta * delta);
    const double e = (neg_log_g(std::exp(2.0 * (std::log(delta) + h))) - neg_log_g(std::exp(2.0 * (std::log(delta) - h)))) /
                     (2.0 * h);
    const double small = (A - e) * delta;

    // [delta, X] in u = ln y
    QuadOptions opts;
    opts.rel_tol = 1e-9;
    opts.abs_tol = 1e-12;
    opts.initial_panels = 32;
    opts.max_panels = 4000;
    auto integrand = [&](double u) { return neg_log_g(std::exp(2.0 * u)) / (2.0 * std::cosh(u)); };
    const QuadResult mid = integrate(integrand, std::log(delta), std::log(X), opts);
    out.evidence.set("small_part", small);
    out.evidence.set("numeric_part", mid.value);
    out.evidence.set("numeric_error", mid.est_error);
    out.evidence.set("x_max", X);
    if (!mid.converged) {
        out.status = Status::inconclusive;
        out.reason = "quadrature of -ln g(y^2)/(1+y^2) did not converge";
        return out;
    }

    // tail model fitted on y in [X/100, X], density argument x = y^2
    constexpr int N = 41;
    std::vector<double> xs(N), ys(N);
    double scale = 0.0;
    for (int i = 0; i < N; ++i) {
        const double y = X / 100.0 * std::pow(100.0, static_cast<double>(i) / (N - 1));
        xs[i] = y * y;
        ys[i] = neg_log_g(xs[i]);
        scale = std::max(scale, std::abs(ys[i]));
    }
    KreinTailModel model;
    double c = 0.0, residual = inf;
    bool fitted_power = false;
    if (in.model) {
        model = *in.model;
        std::vector<double> dev(N);
        for (int i = 0; i < N; ++i) {
            const double lx = std::log(xs[i]);
            dev[i] = ys[i] - (model.q * std::pow(xs[i], model.r) - model.p * lx + model.w * lx * lx);
            c += dev[i] / N;
        }
        residual = 0.0;
        for (double d : dev) residual = std::max(residual, std::abs(d - c));
    } else {
        Eigen::VectorXd yv(N);
        for (int i = 0; i < N; ++i) yv(i) = ys[i];
        for (int j = 2; j <= 400; ++j) {
            const double r = 0.005 * j;
            Eigen::MatrixXd M(N, 3);
            for (int i = 0; i < N; ++i) {
                M(i, 0) = std::pow(xs[i], r);
                M(i, 1) = -std::log(xs[i]);
                M(i, 2) = 1.0;
            }
            const LinearFit f = least_squares(M, yv);
            if (f.coef(0) > 0.0 && f.residual < residual) {
                residual = f.residual;
                model = {f.coef(0), r, f.coef(1), 0.0};
                c = f.coef(2);
                fitted_power = true;
            }
        }
        Eigen::MatrixXd M(N, 3);
        for (int i = 0; i < N; ++i) {
            const double lx = std::log(xs[i]);
            M(i, 0) = lx * lx;
            M(i, 1) = -lx;
            M(i, 2) = 1.0;
        }
        const LinearFit f = least_squares(M, yv);
        if (f.residual < residual) {
            residual = f.residual;
            model = {0.0, 0.0, f.coef(1), f.coef(0)};
            c = f.coef(2);
            fitted_power = false;
        }
    }
    out.evidence.set("q", model.q);
    out.evidence.set("r", model.r);
    out.evidence.set("p", model.p);
    out.evidence.set("w", model.w);
    out.evidence.set("c", c);
    out.evidence.set("residual", residual);
    out.evidence.set("model_supplied", in.model ? 1.0 : 0.0);

    const double threshold = std::max(0.5, 1e-2 * scale);
    if (!(residual <= threshold)) {
        out.status = Status::inconclusive;
        out.reason = "tail model residual " + num(residual) + " above " + num(threshold);
        return out;
    }
    const bool finite = model.q == 0.0 || model.r < 0.5;
    if (!in.model && fitted_power && std::abs(model.r - 0.5) < 0.05) {
        out.status = Status::inconclusive;
        out.reason = "fitted tail exponent r = " + num(model.r) + " too close to 1/2";
        return out;
    }
    if (!finite) {
        out.status = Status::fails;
        out.evidence.set("value", inf);
        out.reason = "";
        return out;
    }
    // int_X^inf of the model over y^2 (1/(1+y^2) -> 1/y^2, relative error below 1/X^2)
    const double lX = std::log(X);
    double tail = c / X;
    if (model.q != 0.0) tail += model.q * std::pow(X, 2.0 * model.r - 1.0) / (1.0 - 2.0 * model.r);
    tail += -2.0 * model.p * (lX + 1.0) / X;
    tail += 4.0 * model.w * (lX * lX + 2.0 * lX + 2.0) / X;
    out.evidence.set("tail_part", tail);
    out.evidence.set("value", small + mid.value + tail);
    out.status = Status::holds;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Theorem 5

Theorem5Input theorem5_input(const DistributionSpec& base, int n) {
    Theorem5Input in;
    in.log_f = [base](double x) { return log_density(base, x); };
    in.log_sf = [base](double x) { return log_survival(base, x); };
    in.beta_hint = survival_tail_exponent(base);
    in.beta_rational = survival_tail_exponent_rational(base);
    in.n = n;
    return in;
}

CriterionOutcome theorem5_check(const Theorem5Input& in) {
    CriterionOutcome out;
    out.criterion = Criterion::theorem5;
    out.cited = "Theorem 5";
    if (in.n < 1) throw ParameterError("theorem5_check: n must be >= 1");
    out.evidence.set("n", in.n);

    double x_end = 2.0;
    while (in.log_sf(x_end) > -300.0 && x_end < 1e300) x_end *= 2.0;
    constexpr int N = 240;
    std::vector<double> xs(N), lf(N), lsf(N);
    for (int i = 0; i < N; ++i) {
        xs[i] = std::exp(std::log(x_end) * i / (N - 1));
        lf[i] = in.log_f(xs[i]);
        lsf[i] = in.log_sf(xs[i]);
        if (std::isnan(lf[i]) || lf[i] == -inf) throw DomainError("theorem5_check: f must be positive on the probes");
    }

    // f decreasing on [x0, inf)
    int i0 = 0;
    for (int i = 0; i + 1 < N; ++i) {
        if (!(lf[i + 1] < lf[i])) i0 = i + 1;
    }
    out.evidence.set("x0", xs[std::min(i0, N - 1)]);
    if (i0 > (3 * N) / 4) {
        out.status = Status::fails;
        out.reason = "density is not decreasing on the upper probes";
        return out;
    }

    // x f / F >= A on x >= x0
    double A = inf;
    for (int i = i0; i < N; ++i) A = std::min(A, std::exp(std::log(xs[i]) + lf[i] - lsf[i]));
    out.evidence.set("A", A);
    if (!(A > 0.0) || !std::isfinite(A)) {
        out.status = Status::fails;
        out.reason = "hazard bound x f(x) / F(x) >= A > 0 fails on the probes";
        return out;
    }

    // ln F >= ln B + gamma ln x - alpha x^beta
    double beta = 0.0;
    std::optional<Rational> beta_q;
    if (in.beta_hint) {
        beta = *in.beta_hint;
        beta_q = in.beta_rational;
        out.evidence.set("beta_fitted", 0.0);
    } else {
        std::vector<int> idx;
        for (int i = i0; i < N; ++i) {
            if (lsf[i] < -1.0) idx.push_back(i);
        }
        if (idx.size() < 6) {
            out.status = Status::inconclusive;
            out.reason = "too few tail probes to fit the survival exponent";
            return out;
        }
        const std::size_t from = idx.size() - idx.size() / 3;
        const int m = static_cast<int>(idx.size() - from);
        Eigen::MatrixXd M(m, 2);
        Eigen::VectorXd y(m);
        for (int j = 0; j < m; ++j) {
            const int i = idx[from + j];
            M(j, 0) = std::log(xs[i]);
            M(j, 1) = 1.0;
            y(j) = std::log(-lsf[i]);
        }
        // local exponent taken on the far tail and rounded up, so the bound holds further out
        beta = least_squares(M, y).coef(0) * 1.01 + 1e-3;
        out.evidence.set("beta_fitted", 1.0);
    }
    if (!(beta > 0.0)) {
        out.status = Status::fails;
        out.reason = "no positive survival tail exponent";
        return out;
    }
    const int m = N - i0;
    Eigen::MatrixXd M(m, 3);
    Eigen::VectorXd y(m);
    for (int j = 0; j < m; ++j) {
        const int i = i0 + j;
        M(j, 0) = 1.0;
        M(j, 1) = std::log(xs[i]);
        M(j, 2) = -std::pow(xs[i], beta);
        y(j) = lsf[i];
    }
    const LinearFit fit = least_squares(M, y);
    const double gamma = fit.coef(1);
    double alpha = fit.coef(2);
    if (!(alpha > 0.0)) {
        out.status = Status::inconclusive;
        out.reason = "survival fit gives a non-positive rate alpha = " + num(alpha);
        return out;
    }
    alpha = alpha * (1.0 + 1e-3) + 1e-12;
    double log_B = inf;
    for (int i = i0; i < N; ++i) log_B = std::min(log_B, lsf[i] - gamma * std::log(xs[i]) + alpha * std::pow(xs[i], beta));
    out.evidence.set("alpha", alpha);
    out.evidence.set("beta", beta);
    out.evidence.set("gamma", gamma);
    out.evidence.set("log_B", log_B);
    out.evidence.set("B", std::exp(log_B));
    out.evidence.set("max_det_n_bound", std::floor(2.0 * beta + 1e-12));

    const bool indet = beta_q ? Rational::make(in.n, 1) > Rational::make(2, 1) * *beta_q : in.n > 2.0 * beta + 1e-9;
    if (indet) {
        out.status = Status::holds;
    } else {
        out.status = Status::fails;
        out.reason = "n <= 2 beta: Theorem 5 gives no conclusion";
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Lemma 2 gate, Lemma 4 / Remark 4

CriterionOutcome moment_inequality_suite(const MomentSequence& seq, int K, double slack) {
    if (K < 2) throw ParameterError("moment_inequality_suite: K must be >= 2");
    CriterionOutcome out;
    out.criterion = Criterion::moment_inequalities;
    out.cited = "Lemma 2";
    const std::vector<double> lm = seq.table(K + 1);
    const bool claim_i = lm[1] >= 0.0;
    double margin_ii = inf, margin_i = inf, margin_lyap = inf;
    for (int k = 1; k <= K; ++k) {
        const double tol = slack * std::max(1.0, std::abs(lm[k + 1]));
        const double d2 = lm[k + 1] - (lm[1] + lm[k]);
        margin_ii = std::min(margin_ii, d2);
        if (d2 < -tol) {
            throw DataError(seq.label() + ": m_1 m_k > m_{k+1} at k = " + std::to_string(k), k);
        }
        if (claim_i) {
            const double d1 = lm[k + 1] - lm[k];
            margin_i = std::min(margin_i, d1);
            if (d1 < -tol) throw DataError(seq.label() + ": m_k > m_{k+1} with m_1 >= 1 at k = " + std::to_string(k), k);
        }
        if (k >= 2) {
            const double dl = lm[k] / k - lm[k - 1] / (k - 1);
            margin_lyap = std::min(margin_lyap, dl);
            if (dl < -slack * std::max(1.0, std::abs(lm[k] / k))) {
                throw DataError(seq.label() + ": m_k^(1/k) decreases at k = " + std::to_string(k), k);
            }
        }
    }
    out.status = Status::holds;
    out.evidence.set("K", K);
    out.evidence.set("min_margin_ii", margin_ii);
    out.evidence.set("claim_i_checked", claim_i ? 1.0 : 0.0);
    if (claim_i) out.evidence.set("min_margin_i", margin_i);
    out.evidence.set("min_margin_lyapunov", margin_lyap);
    return out;
}

HazardBounds hazard_integral_bounds(const DistributionSpec& spec, double A, double x0, const std::vector<double>& grid,
                                    double slack) {
    if (!(A > 0.0)) throw ParameterError("hazard_integral_bounds: A must be > 0");
    HazardBounds hb;
    hb.min_lower_margin = inf;
    hb.min_upper_margin = inf;
    const double lsf0 = log_survival(spec, x0);
    for (double x : grid) {
        if (!(x > x0)) continue;
        auto psi = [&](double t) { return log_density(spec, std::exp(t)); };
        const double log_I = log_integrate_exp(psi, std::log(x), inf, 1e-12, std::log(x)).log_value;
        const double lsf = log_survival(spec, x);
        const double log_upper = lsf - std::log(x);
        const double log_lower = std::log(A / (1.0 + A)) + log_upper;
        const double lower_margin = std::expm1(log_I - log_lower);
        const double upper_margin = -std::expm1(log_I - log_upper);
        hb.min_lower_margin = std::min(hb.min_lower_margin, lower_margin);
        hb.min_upper_margin = std::min(hb.min_upper_margin, upper_margin);
        hb.lower_ok = hb.lower_ok && lower_margin >= -slack;
        hb.upper_ok = hb.upper_ok && upper_margin >= -slack;
        hb.power_tail_ok = hb.power_tail_ok && lsf <= lsf0 + A * std::log(x0 / x) + slack;
        ++hb.points;
    }
    return hb;
}

}  // namespace momdet
