#include "momdet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "momdet/errors.hpp"
#include "momdet/random.hpp"
#include "momdet/specfun.hpp"

namespace momdet {

namespace {

constexpr std::int64_t shard_size = 1 << 15;

struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

// pairwise merge of running mean / sum of squared deviations
Moments merge(const Moments& a, const Moments& b) {
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    Moments r;
    r.count = a.count + b.count;
    const double delta = b.mean - a.mean;
    r.mean = a.mean + delta * static_cast<double>(b.count) / static_cast<double>(r.count);
    r.m2 = a.m2 + b.m2 + delta * delta * static_cast<double>(a.count) * static_cast<double>(b.count) /
                             static_cast<double>(r.count);
    return r;
}

Moments run_shard(const DistributionSpec& spec, const TransformSpec& t, double s, std::int64_t count,
                  std::uint64_t seed) {
    const int factors = t.kind == TransformKind::product ? t.n : 1;
    const double exponent = t.kind == TransformKind::power ? s * t.n : s;
    const std::vector<double> draws = sample(spec, seed, static_cast<std::size_t>(count * factors));
    Moments m;
    for (std::int64_t i = 0; i < count; ++i) {
        double v = 1.0;
        for (int j = 0; j < factors; ++j) v *= draws[static_cast<std::size_t>(i * factors + j)];
        const double y = std::pow(v, exponent);
        ++m.count;
        const double d = y - m.mean;
        m.mean += d / static_cast<double>(m.count);
        m.m2 += d * (y - m.mean);
    }
    return m;
}

}  // namespace

QuadResult quad_moment(const std::function<double(double)>& density, const std::function<double(double)>& tail_bound,
                       double s, double tol) {
    if (!(s >= 0.0)) throw DomainError("quad_moment: s must be >= 0");
    if (!(tol > 0.0)) throw ParameterError("quad_moment: tol must be > 0");
    if (!tail_bound) throw ParameterError("quad_moment: no tail model, refusing to integrate");
    QuadOptions opts;
    opts.rel_tol = tol / 8.0;
    opts.initial_panels = 8;
    opts.max_panels = 20000;
    auto near = [&](double u) {
        const double u2 = u * u;
        const double x = u2 * u2;
        if (x <= 0.0) return 0.0;
        return 4.0 * u2 * u * std::pow(x, s) * density(x);
    };
    const QuadResult head = integrate(near, 0.0, 1.0, opts);
    auto far = [&](double x) { return std::pow(x, s) * density(x); };

    double X = 2.0;
    QuadResult body = integrate(far, 1.0, X, opts);
    double tail = tail_bound(X);
    while (!(tail < 0.5 * tol * std::max(1.0, head.value + body.value))) {
        X *= 2.0;
        if (X > 1e12) throw NumericError("quad_moment: tail bound does not fall below tolerance");
        body = integrate(far, 1.0, X, opts);
        tail = tail_bound(X);
    }
    QuadResult out;
    out.value = head.value + body.value;
    out.est_error = head.est_error + body.est_error;
    out.panels = head.panels + body.panels;
    out.tail_bound = tail;
    out.converged = head.converged && body.converged && out.est_error + tail < tol * std::max(1.0, out.value);
    if (!out.converged) {
        throw NumericError("quad_moment: error " + std::to_string(out.est_error) + " + tail " + std::to_string(tail) +
                           " exceeds tolerance at s = " + std::to_string(s));
    }
    return out;
}

QuadResult quad_moment(const DistributionSpec& spec, double s, double tol) {
    return quad_moment([&spec](double x) { return density(spec, x); },
                       [&spec, s](double X) { return moment_tail_bound(spec, s, X); }, s, tol);
}

McEstimate mc_moment(const DistributionSpec& spec, TransformSpec t, double s, std::int64_t n_samples,
                     std::uint64_t seed, int workers) {
    t = t.normalized();
    if (n_samples < 2) throw ParameterError("mc_moment: need at least 2 samples");
    if (!(s >= 0.0)) throw DomainError("mc_moment: s must be >= 0");
    const std::int64_t shards = (n_samples + shard_size - 1) / shard_size;
    std::vector<Moments> parts(static_cast<std::size_t>(shards));
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&](std::int64_t first, std::int64_t stride) {
        try {
            for (std::int64_t i = first; i < shards; i += stride) {
                const std::int64_t count = std::min(shard_size, n_samples - i * shard_size);
                parts[static_cast<std::size_t>(i)] =
                    run_shard(spec, t, s, count, derive_seed(seed, static_cast<std::uint64_t>(i)));
            }
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    };
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(shards)));
    if (w == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < w; ++k) pool.emplace_back(work, k, w);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    Moments total;
    for (const Moments& p : parts) total = merge(total, p);
    McEstimate out;
    out.samples = total.count;
    out.estimate = total.mean;
    out.std_error = std::sqrt(total.m2 / static_cast<double>(total.count - 1) / static_cast<double>(total.count));
    return out;
}

}  // namespace momdet

namespace momdet {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<DistributionSpec> eq1_fixtures() {
    return {DistributionSpec::gg(1, 1, 1),         DistributionSpec::gg(0.5, 2, 1),
            DistributionSpec::gg(2, 0.5, 0.5),     DistributionSpec::gg(0.5, 0.5, 2),
            DistributionSpec::gg(1, 2, 2),         DistributionSpec::half_logistic(),
            DistributionSpec::lognormal01(),       DistributionSpec::log_skew_normal(1.0),
            DistributionSpec::half_bessel({1, 1, 1}), DistributionSpec::half_bessel({0.5, 2, 1})};
}

}  // namespace

CheckResult check_lemma1_convolution() {
    CheckResult r{.name = "lemma1_convolution", .pass = true};
    for (const GGParams& p : {GGParams{1, 1, 1}, GGParams{0.5, 2, 1}}) {
        const DistributionSpec base = DistributionSpec::gg(p);
        for (int i = 0; i <= 100; ++i) {
            const double x = 0.1 * std::pow(200.0, i / 100.0);
            const double closed = product_density_gg_closed(p, x);
            const double conv = product_density_pair(base, x);
            const double err = std::abs(conv - closed) / closed;
            if (err > r.max_rel_err) {
                r.max_rel_err = err;
                r.detail = base.name() + " at x = " + fmt(x);
            }
        }
    }
    r.pass = r.max_rel_err < 1e-5;
    r.detail = "max rel err " + fmt(r.max_rel_err) + " at " + r.detail;
    return r;
}

CheckResult check_k0_mellin(const std::vector<double>& s_values) {
    CheckResult r{.name = "k0_mellin", .pass = true};
    auto k0 = [](double x) { return bessel_k0(x).value; };
    for (double s : s_values) {
        // K0(x) <= sqrt(pi / 2x) e^-x
        auto tail = [s](double x) {
            return std::sqrt(std::numbers::pi / 2.0) * std::exp(log_gamma(s + 0.5)) *
                   upper_incomplete_gamma_reg(s + 0.5, x);
        };
        const double rhs = std::pow(2.0, s - 1.0) * std::exp(2.0 * log_gamma((s + 1.0) / 2.0));
        const double lhs = quad_moment(k0, tail, s, 1e-10).value;
        const double err = std::abs(lhs - rhs) / rhs;
        if (err > r.max_rel_err) {
            r.max_rel_err = err;
            r.detail = "s = " + fmt(s);
        }
    }
    r.pass = r.max_rel_err < 1e-6;
    r.detail = "max rel err " + fmt(r.max_rel_err) + " at " + r.detail;
    return r;
}

CheckResult check_eq1(int n_max, int k_max) {
    CheckResult r{.name = "eq1", .pass = true};
    int comparisons = 0;
    for (const DistributionSpec& spec : eq1_fixtures()) {
        const double slack = spec.has_closed_form_moments() ? 0.0 : 1e-9;
        for (int n = 2; n <= n_max; ++n) {
            for (int k = 1; k <= k_max; ++k) {
                const double power = log_moment(spec, static_cast<double>(n) * k);
                const double product = n * log_moment(spec, k);
                ++comparisons;
                if (power < product - slack * std::max(1.0, std::abs(product))) {
                    r.pass = false;
                    if (r.detail.empty()) {
                        r.detail = "violated at " + spec.name() + ", n = " + std::to_string(n) + ", k = " + std::to_string(k);
                    }
                }
            }
        }
    }
    if (r.pass) r.detail = std::to_string(comparisons) + " comparisons, none violated";
    return r;
}

CheckResult check_quad_closed(double tol) {
    CheckResult r{.name = "quad_closed", .pass = true};
    const DistributionSpec specs[] = {
        DistributionSpec::gg(1, 1, 1),          DistributionSpec::gg(0.5, 2, 1),
        DistributionSpec::gg(2, 0.5, 0.5),      DistributionSpec::gg(0.5, 0.5, 2),
        DistributionSpec::lognormal01(),        DistributionSpec::half_bessel({1, 1, 1}),
        DistributionSpec::half_bessel({0.5, 2, 1}), DistributionSpec::half_bessel({2, 0.5, 0.5})};
    for (const DistributionSpec& spec : specs) {
        for (double s : {0.5, 1.0, 2.0, 3.0, 5.0}) {
            const double closed = std::exp(log_moment(spec, s));
            const double quad = quad_moment(spec, s, tol * 1e-2).value;
            const double err = std::abs(quad - closed) / closed;
            if (err > r.max_rel_err) {
                r.max_rel_err = err;
                r.detail = spec.name() + ", s = " + fmt(s);
            }
        }
    }
    r.pass = r.max_rel_err < tol;
    r.detail = "max rel err " + fmt(r.max_rel_err) + " at " + r.detail;
    return r;
}

std::vector<CheckResult> check_mc_quad(std::int64_t samples, std::uint64_t seed, int workers) {
    struct Fixture {
        DistributionSpec spec;
        TransformSpec t;
        double s;
    };
    const Fixture fixtures[] = {
        {DistributionSpec::gg(1, 1, 1), TransformSpec::identity(), 1.0},
        {DistributionSpec::gg(1, 1, 1), TransformSpec::product(2), 1.0},
        {DistributionSpec::gg(1, 1, 1), TransformSpec::power(2), 1.0},
        {DistributionSpec::gg(0.5, 2, 1), TransformSpec::product(3), 1.0},
        {DistributionSpec::gg(0.5, 2, 1), TransformSpec::power(3), 1.0},
        {DistributionSpec::gg(2, 0.5, 0.5), TransformSpec::identity(), 1.0},
        {DistributionSpec::half_logistic(), TransformSpec::identity(), 2.0},
        {DistributionSpec::half_logistic(), TransformSpec::product(2), 1.0},
        {DistributionSpec::half_logistic(), TransformSpec::power(2), 1.0},
        {DistributionSpec::lognormal01(), TransformSpec::identity(), 1.0},
        {DistributionSpec::log_skew_normal(1.0), TransformSpec::identity(), 1.0},
        {DistributionSpec::half_bessel({1, 1, 1}), TransformSpec::identity(), 1.0},
    };
    CheckResult agree{.name = "mc_quad", .pass = true};
    CheckResult eq1{.name = "mc_eq1", .pass = true};
    std::vector<McEstimate> est;
    int index = 0;
    for (const Fixture& f : fixtures) {
        const McEstimate mc = mc_moment(f.spec, f.t, f.s, samples, derive_seed(seed, static_cast<std::uint64_t>(index++)), workers);
        est.push_back(mc);
        double exact = 0.0;
        if (f.t.kind == TransformKind::product) {
            exact = std::pow(quad_moment(f.spec, f.s, 1e-10).value, f.t.n);
        } else {
            exact = quad_moment(f.spec, f.s * f.t.n, 1e-10).value;
        }
        const double z = std::abs(mc.estimate - exact) / mc.std_error;
        if (z > agree.max_rel_err) {
            agree.max_rel_err = z;
            agree.detail = f.t.describe(f.spec) + ", s = " + fmt(f.s);
        }
    }
    agree.pass = agree.max_rel_err < 3.0;
    agree.detail = "max |z| " + fmt(agree.max_rel_err) + " at " + agree.detail;
    // product / power pairs share base, n and s
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < est.size(); ++i) {
        const Fixture& a = fixtures[i];
        const Fixture& b = fixtures[i + 1];
        if (a.t.kind != TransformKind::product || b.t.kind != TransformKind::power) continue;
        if (!(a.spec == b.spec) || a.t.n != b.t.n || a.s != b.s) continue;
        const double joint = std::hypot(est[i].std_error, est[i + 1].std_error);
        const double margin = (est[i + 1].estimate - est[i].estimate) / joint;
        min_margin = std::min(min_margin, margin);
    }
    eq1.pass = min_margin >= -3.0;
    eq1.detail = "min (power - product) / joint se = " + fmt(min_margin);
    return {agree, eq1};
}

}  // namespace momdet
