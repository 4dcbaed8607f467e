#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "momdet/distributions.hpp"
#include "momdet/errors.hpp"

using namespace momdet;
using doctest::Approx;

namespace {

// independent oracle: E[X^s] by tanh-sinh on the density
double boost_moment(const DistributionSpec& spec, double s) {
    boost::math::quadrature::exp_sinh<double> q;
    return q.integrate([&](double x) {
        const double f = x > 0 ? density(spec, x) : 0.0;
        return f > 0 ? std::pow(x, s) * f : 0.0;
    });
}

}  // namespace

TEST_CASE("GG parameters are validated") {
    CHECK_THROWS_AS(DistributionSpec::gg(0, 1, 1), ParameterError);
    CHECK_THROWS_AS(DistributionSpec::gg(1, -1, 1), ParameterError);
    CHECK_THROWS_AS(DistributionSpec::gg(1, 1, NAN), ParameterError);
    CHECK(DistributionSpec::gg(0.5, 2, 1).name() == "GG(0.5,2,1)");
    CHECK(family_from_string("half-logistic") == Family::HalfLogistic);
    CHECK_THROWS_AS(family_from_string("weibull"), ParameterError);
}

TEST_CASE("GG closed-form moments") {
    CHECK(gg_log_moment({1, 1, 1}, 3) == Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(std::abs(gg_log_moment({0.5, 2, 1}, 2)) < 1e-14);
    CHECK(gg_log_moment({2, 1, 3}, 1) == Approx(std::log(1.5)).epsilon(1e-14));
    // quadrature on c x^2 e^{-2x}
    CHECK(std::exp(gg_log_moment({2, 1, 3}, 1)) == Approx(boost_moment(DistributionSpec::gg(2, 1, 3), 1)).epsilon(1e-10));
    CHECK_THROWS_AS(gg_log_moment({1, 1, 1}, -1), DomainError);
}

TEST_CASE("densities") {
    CHECK(density(DistributionSpec::half_logistic(), 0.0) == Approx(0.5));
    CHECK(density(DistributionSpec::gg(0.5, 2, 1), 1.0) ==
          Approx(std::sqrt(2 / std::numbers::pi) * std::exp(-0.5)).epsilon(1e-14));
    CHECK(density(DistributionSpec::half_bessel({1, 1, 1}), 1.0) ==
          Approx(2 * boost::math::cyl_bessel_k(0, 2.0)).epsilon(1e-13));
    CHECK(density(DistributionSpec::lognormal01(), 1.0) == Approx(1 / std::sqrt(2 * std::numbers::pi)));
    CHECK_THROWS_AS(density(DistributionSpec::gg(1, 1, 1), -1.0), DomainError);

    // every catalog density integrates to one
    for (const auto& spec : {DistributionSpec::gg(2, 0.5, 0.5), DistributionSpec::half_logistic(),
                             DistributionSpec::lognormal01(), DistributionSpec::log_skew_normal(1.0),
                             DistributionSpec::half_bessel({0.5, 2, 1})}) {
        INFO(spec.name());
        CHECK(boost_moment(spec, 0.0) == Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("survival functions") {
    const auto hl = DistributionSpec::half_logistic();
    CHECK(survival(hl, 0.0) == Approx(1.0));
    CHECK(survival(hl, 1.0) == Approx(2 * std::exp(-1.0) / (1 + std::exp(-1.0))).epsilon(1e-14));
    CHECK(survival(DistributionSpec::gg(1, 1, 1), 2.0) == Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(log_survival(DistributionSpec::gg(1, 1, 1), 800.0) == Approx(-800.0).epsilon(1e-14));

    // the integral forms against direct quadrature of the density
    boost::math::quadrature::exp_sinh<double> q;
    for (const auto& spec : {DistributionSpec::log_skew_normal(1.0), DistributionSpec::half_bessel({1, 1, 1})}) {
        for (double x : {0.5, 2.0, 7.0}) {
            const double direct = q.integrate([&](double t) { return density(spec, x + t); });
            INFO(spec.name() << " x = " << x);
            CHECK(survival(spec, x) == Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("moments of the numeric families") {
    const auto hl = DistributionSpec::half_logistic();
    // E[xi] = 2 ln 2
    CHECK(log_moment(hl, 1.0) == Approx(std::log(2 * std::log(2.0))).epsilon(1e-13));
    CHECK(log_moment(hl, 1.0) >= -std::log(2.0));
    CHECK(log_moment(hl, 1.0) <= std::log(2.0));
    for (double s : {0.5, 2.0, 3.7}) CHECK(std::exp(log_moment(hl, s)) == Approx(boost_moment(hl, s)).epsilon(1e-9));

    // E[X^s] = 2 e^{s^2/2} Phi(delta s), delta = lambda / sqrt(1 + lambda^2)
    const double delta = 1 / std::sqrt(2.0);
    for (double s : {1.0, 2.0, 5.0}) {
        const double expect = std::log(2.0) + s * s / 2 + std::log(0.5 * std::erfc(-delta * s / std::sqrt(2.0)));
        CHECK(log_moment(DistributionSpec::log_skew_normal(1.0), s) == Approx(expect).epsilon(1e-10));
    }

    const auto ln = DistributionSpec::lognormal01();
    CHECK(log_moment(ln, 2.0) == Approx(2.0));
    CHECK(log_moment(ln, 2.0) - log_moment(ln, 1.0) == Approx(1.5));
    CHECK(std::abs(log_moment(DistributionSpec::half_bessel({0.5, 2, 1}), 2.0)) < 1e-13);
}

TEST_CASE("moment tail bounds dominate the true tail") {
    boost::math::quadrature::exp_sinh<double> q;
    for (const auto& spec : {DistributionSpec::gg(1, 1, 1), DistributionSpec::half_logistic(),
                             DistributionSpec::lognormal01(), DistributionSpec::half_bessel({1, 1, 1}),
                             DistributionSpec::half_bessel({2, 0.5, 0.5})}) {
        for (double X : {2.0, 10.0, 40.0}) {
            const double s = 2.0;
            const double tail = q.integrate([&](double t) { return std::pow(X + t, s) * density(spec, X + t); });
            INFO(spec.name() << " X = " << X);
            CHECK(moment_tail_bound(spec, s, X) >= tail * (1 - 1e-9));
        }
    }
}

TEST_CASE("quantiles and sampling") {
    CHECK(half_logistic_quantile(0.5) == Approx(std::log(3.0)).epsilon(1e-15));
    const auto gg = DistributionSpec::gg(2, 0.5, 3);
    for (double u : {1e-9, 0.1, 0.5, 0.9, 1 - 1e-9}) {
        const double x = quantile(gg, u);
        CHECK(1 - survival(gg, x) == Approx(u).epsilon(1e-9));
    }
    const auto draws = sample(DistributionSpec::gg(1, 1, 1), 42, 1000000);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    CHECK(std::abs(mean - 1.0) < 0.005);
    const auto hb = sample(DistributionSpec::half_bessel({1, 1, 1}), 43, 1000000);
    CHECK(std::abs(std::accumulate(hb.begin(), hb.end(), 0.0) / hb.size() - 1.0) < 0.01);
    CHECK(sample(DistributionSpec::lognormal01(), 7, 5) == sample(DistributionSpec::lognormal01(), 7, 5));
    CHECK(sample(DistributionSpec::lognormal01(), 7, 5) != sample(DistributionSpec::lognormal01(), 8, 5));
}

TEST_CASE("survival tail exponents") {
    CHECK(*survival_tail_exponent(DistributionSpec::gg(1, 0.5, 2)) == 0.5);
    CHECK(*survival_tail_exponent_rational(DistributionSpec::half_bessel({1, 1, 1})) == Rational::make(1, 2));
    CHECK(*survival_tail_exponent(DistributionSpec::half_logistic()) == 1.0);
    CHECK_FALSE(survival_tail_exponent(DistributionSpec::lognormal01()).has_value());
}
