#pragma once

#include <string>

#include "momdet/distributions.hpp"
#include "momdet/moments.hpp"

namespace momdet {

enum class TransformKind { identity, power, product };

const char* to_string(TransformKind k);
TransformKind transform_kind_from_string(const std::string& name);

// X_n = xi^n (power) or Y_n = xi_1 ... xi_n with i.i.d. factors (product).
struct TransformSpec {
    TransformKind kind = TransformKind::identity;
    int n = 1;

    static TransformSpec identity() { return {TransformKind::identity, 1}; }
    static TransformSpec power(int n);
    static TransformSpec product(int n);

    // Maps power/product with n = 1 to identity; rejects n < 1 and identity with n != 1.
    TransformSpec normalized() const;
    std::string describe(const DistributionSpec& base) const;
    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

enum class DensityForm { closed, mellin_numeric, unavailable };

const char* to_string(DensityForm f);

struct TransformedVariable {
    DistributionSpec base;
    TransformSpec transform;
    MomentSequence moments;
    DensityForm density_form;
};

// ln m_k of X_n: ln E[xi^(n k)]
MomentSequence power_moments(const DistributionSpec& base, int n);

// ln m_k of Y_n: n ln E[xi^k]. Checks ln m_k(X_n) >= ln m_k(Y_n) for k <= check_k and throws
// DataError on a violation beyond `slack` (0 for closed-form bases).
MomentSequence product_moments(const DistributionSpec& base, int n, int check_k = 60);

TransformedVariable make_transformed(const DistributionSpec& base, TransformSpec t);

// Density of xi^n: (1/n) z^(1/n - 1) f(z^(1/n)).
double power_density(const DistributionSpec& base, int n, double z);
double power_log_density(const DistributionSpec& base, int n, double z);

// g2(x) = int_0^inf f(u) f(x/u) / u du evaluated in t = ln u, where the integrand is
// symmetric about ln(x)/2.
double product_density_pair(const DistributionSpec& base, double x);
double product_log_density_pair(const DistributionSpec& base, double x);

// Closed form g2(x) = (2c^2/beta) x^(gamma-1) K0(2 alpha x^(beta/2)) for GG factors.
double product_density_gg_closed(const GGParams& p, double x);
double product_log_density_gg_closed(const GGParams& p, double x);

// Structural tail g2(x) ~ C x^power exp(-rate x^exponent); C is left to fitting.
struct ProductTailShape {
    double power;     // gamma - beta/4 - 1
    double rate;      // 2 alpha
    double exponent;  // beta / 2
};

ProductTailShape product_tail_shape(const GGParams& p);

// Log-density of the transformed variable where one is available; ParameterError for
// products of three or more factors.
double transformed_log_density(const TransformedVariable& v, double x);

}  // namespace momdet
