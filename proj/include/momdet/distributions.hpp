#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momdet/moments.hpp"
#include "momdet/rational.hpp"

namespace momdet {

// Generalized gamma GG(alpha, beta, gamma): density c x^(gamma-1) exp(-alpha x^beta) on [0, inf),
// c = beta alpha^(gamma/beta) / Gamma(gamma/beta).
struct GGParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    void validate() const;
    double log_norm_const() const;
    friend bool operator==(const GGParams&, const GGParams&) = default;
};

enum class Family { GG, HalfLogistic, LogNormal01, LogSkewNormal, HalfBessel };

const char* to_string(Family f);
Family family_from_string(const std::string& name);

// A base law from the catalog. HalfBessel(p) is the law of xi1*xi2 with xi_i ~ GG(p) i.i.d.
class DistributionSpec {
public:
    static DistributionSpec gg(GGParams p);
    static DistributionSpec gg(double alpha, double beta, double gamma) { return gg(GGParams{alpha, beta, gamma}); }
    static DistributionSpec half_logistic();
    static DistributionSpec lognormal01();
    static DistributionSpec log_skew_normal(double lambda);
    static DistributionSpec half_bessel(GGParams p);

    Family family() const { return family_; }
    // GG parameters for GG and HalfBessel; ParameterError otherwise.
    const GGParams& gg_params() const;
    double lambda() const { return lambda_; }

    std::string name() const;
    bool has_closed_form_moments() const;

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

private:
    DistributionSpec() = default;
    Family family_ = Family::GG;
    GGParams gg_{};
    double lambda_ = 0.0;
};

// ln E[xi^s] = ln Gamma((gamma+s)/beta) - ln Gamma(gamma/beta) - (s/beta) ln alpha
double gg_log_moment(const GGParams& p, double s);

// Densities are defined on [0, inf); at x = 0 the right limit is returned (possibly +inf).
double density(const DistributionSpec& spec, double x);
double log_density(const DistributionSpec& spec, double x);

double survival(const DistributionSpec& spec, double x);
double log_survival(const DistributionSpec& spec, double x);

// ln E[X^s], s >= 0: closed form for GG, LogNormal01 and HalfBessel; log-domain quadrature
// for HalfLogistic and LogSkewNormal.
double log_moment(const DistributionSpec& spec, double s);

// The sequence k -> ln E[X^k] of the base law itself.
MomentSequence base_moments(const DistributionSpec& spec);

// Upper bound on int_X^inf x^s f(x) dx from an analytic majorant of the density tail.
double moment_tail_bound(const DistributionSpec& spec, double s, double x);

// Inverse CDF draws, deterministic for a given seed.
double quantile(const DistributionSpec& spec, double u);
double half_logistic_quantile(double u);
std::vector<double> sample(const DistributionSpec& spec, std::uint64_t seed, std::size_t count);

// Exponent beta of the Weibull-type survival tail exp(-a x^beta) where the family has one
// (GG: beta, HalfLogistic: 1, HalfBessel: beta/2).
std::optional<double> survival_tail_exponent(const DistributionSpec& spec);

// The same exponent as an exact fraction when the parameters are rational.
std::optional<Rational> survival_tail_exponent_rational(const DistributionSpec& spec);

}  // namespace momdet
