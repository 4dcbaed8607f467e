#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>

#include "momdet/errors.hpp"
#include "momdet/transforms.hpp"

using namespace momdet;
using doctest::Approx;

TEST_CASE("transform specs normalize n = 1 to identity") {
    CHECK(TransformSpec::power(1) == TransformSpec::identity());
    CHECK(TransformSpec::product(1) == TransformSpec::identity());
    CHECK_THROWS_AS(TransformSpec::power(0), ParameterError);
    CHECK_THROWS_AS((TransformSpec{TransformKind::identity, 2}.normalized()), ParameterError);
    CHECK(transform_kind_from_string("product") == TransformKind::product);
    CHECK(TransformSpec::power(3).describe(DistributionSpec::half_logistic()) == "HalfLogistic^3");
}

TEST_CASE("power and product moment sequences") {
    const auto exp1 = DistributionSpec::gg(1, 1, 1);
    CHECK(power_moments(exp1, 2).log_m(3) == Approx(std::log(720.0)).epsilon(1e-14));
    CHECK(std::abs(power_moments(DistributionSpec::gg(0.5, 2, 1), 2).log_m(1)) < 1e-14);
    const double hl = power_moments(DistributionSpec::half_logistic(), 3).log_m(2);
    CHECK(hl >= std::log(720.0 / 2));
    CHECK(hl <= std::log(2 * 720.0));
    CHECK(product_moments(exp1, 2).log_m(2) == Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(power_moments(exp1, 2).log_m(0) == 0.0);

    const auto base = base_moments(DistributionSpec::half_logistic());
    const auto one = product_moments(DistributionSpec::half_logistic(), 1);
    for (int k = 0; k <= 10; ++k) CHECK(one.log_m(k) == base.log_m(k));
}

TEST_CASE("composed growth rates") {
    const auto p = power_moments(DistributionSpec::gg(1, 1, 1), 3).exact_rate();
    REQUIRE(p);
    CHECK(p->rho == 3.0);
    CHECK(p->log_c == Approx(3 * std::log(3.0)));
    const auto q = product_moments(DistributionSpec::gg(0.5, 2, 1), 4).exact_rate();
    REQUIRE(q);
    CHECK(*q->rho_rational == Rational::make(2, 1));
    CHECK(power_moments(DistributionSpec::lognormal01(), 2).exact_rate()->superpolynomial);
}

TEST_CASE("power densities") {
    const auto exp1 = DistributionSpec::gg(1, 1, 1);
    CHECK(power_density(exp1, 1, 2.0) == Approx(std::exp(-2.0)));
    CHECK(power_density(exp1, 3, 1.0) == Approx(std::exp(-1.0) / 3));
    const double y = 2.0;  // 8^(1/3)
    const double h = (2.0 / 3) * std::pow(8.0, -2.0 / 3) * std::exp(-y) / std::pow(1 + std::exp(-y), 2);
    CHECK(power_density(DistributionSpec::half_logistic(), 3, 8.0) == Approx(h).epsilon(1e-14));
    CHECK_THROWS_AS(power_density(exp1, 2, 0.0), DomainError);

    boost::math::quadrature::exp_sinh<double> q;
    const double mass = q.integrate([](double z) { return power_density(DistributionSpec::half_logistic(), 4, z); });
    CHECK(mass == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("product density of two factors") {
    CHECK(product_density_pair(DistributionSpec::gg(1, 1, 1), 1.0) ==
          Approx(2 * boost::math::cyl_bessel_k(0, 2.0)).epsilon(1e-10));
    CHECK(product_density_pair(DistributionSpec::gg(0.5, 2, 1), 1.0) ==
          Approx(2 / std::numbers::pi * boost::math::cyl_bessel_k(0, 1.0)).epsilon(1e-10));
    CHECK(product_density_gg_closed({1, 1, 1}, 4.0) == Approx(2 * boost::math::cyl_bessel_k(0, 4.0)).epsilon(1e-13));
    CHECK_THROWS_AS(product_density_gg_closed({1, 1, 1}, 0.0), DomainError);

    // the numeric convolution also covers bases without a closed form
    boost::math::quadrature::exp_sinh<double> q;
    const auto hl = DistributionSpec::half_logistic();
    const double direct = q.integrate([&](double u) { return u > 0 ? density(hl, u) * density(hl, 1.5 / u) / u : 0.0; });
    CHECK(product_density_pair(hl, 1.5) == Approx(direct).epsilon(1e-8));

    const auto shape = product_tail_shape({1, 1, 1});
    CHECK(shape.power == Approx(-0.25));
    CHECK(shape.rate == 2.0);
    CHECK(shape.exponent == 0.5);
}

TEST_CASE("transformed densities refuse products of three or more") {
    const auto v = make_transformed(DistributionSpec::gg(1, 1, 1), TransformSpec::product(3));
    CHECK(v.density_form == DensityForm::unavailable);
    CHECK_THROWS_WITH_AS(transformed_log_density(v, 1.0), doctest::Contains("Theorem 5"), ParameterError);
    CHECK(make_transformed(DistributionSpec::half_logistic(), TransformSpec::product(2)).density_form ==
          DensityForm::mellin_numeric);
}
