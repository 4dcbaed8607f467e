#include "momdet/transforms.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "momdet/errors.hpp"
#include "momdet/quadrature.hpp"

namespace momdet {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Rate of a transformed sequence from the base rate m_{k+1}/m_k ~ C (k+1)^rho:
// power: C^n n^(n rho) (k+1)^(n rho); product: C^n (k+1)^(n rho).
std::optional<ExactRate> compose_rate(const std::optional<ExactRate>& base, TransformKind kind, int n) {
    if (!base) return std::nullopt;
    ExactRate r = *base;
    if (kind == TransformKind::identity) return r;
    if (r.superpolynomial) return r;
    r.rho = n * base->rho;
    r.log_c = n * base->log_c + (kind == TransformKind::power ? n * base->rho * std::log(static_cast<double>(n)) : 0.0);
    if (base->rho_rational) r.rho_rational = Rational::make(n, 1) * *base->rho_rational;
    r.basis = base->basis + (kind == TransformKind::power ? "; power" : "; product") + " of " + std::to_string(n);
    return r;
}

}  // namespace

const char* to_string(TransformKind k) {
    switch (k) {
        case TransformKind::identity: return "identity";
        case TransformKind::power: return "power";
        case TransformKind::product: return "product";
    }
    return "?";
}

TransformKind transform_kind_from_string(const std::string& name) {
    if (name == "identity") return TransformKind::identity;
    if (name == "power") return TransformKind::power;
    if (name == "product") return TransformKind::product;
    throw ParameterError("unknown transform '" + name + "' (expected identity, power or product)");
}

TransformSpec TransformSpec::power(int n) { return TransformSpec{TransformKind::power, n}.normalized(); }
TransformSpec TransformSpec::product(int n) { return TransformSpec{TransformKind::product, n}.normalized(); }

TransformSpec TransformSpec::normalized() const {
    if (n < 1) throw ParameterError("transform order n must be >= 1, got " + std::to_string(n));
    if (kind == TransformKind::identity && n != 1) throw ParameterError("identity transform requires n = 1");
    if (n == 1) return identity();
    return *this;
}

std::string TransformSpec::describe(const DistributionSpec& base) const {
    switch (kind) {
        case TransformKind::identity: return base.name();
        case TransformKind::power: return base.name() + "^" + std::to_string(n);
        case TransformKind::product: return "product of " + std::to_string(n) + " x " + base.name();
    }
    return base.name();
}

const char* to_string(DensityForm f) {
    switch (f) {
        case DensityForm::closed: return "closed";
        case DensityForm::mellin_numeric: return "mellin_numeric";
        case DensityForm::unavailable: return "unavailable";
    }
    return "?";
}

MomentSequence power_moments(const DistributionSpec& base, int n) {
    if (n < 1) throw ParameterError("power_moments: n must be >= 1");
    const MomentSequence b = base_moments(base);
    const DistributionSpec copy = base;
    return MomentSequence([copy, n](int k) { return log_moment(copy, static_cast<double>(n) * k); }, b.exact(),
                          n == 1 ? b.source() : MomentSource::composed,
                          TransformSpec{TransformKind::power, n}.normalized().describe(base),
                          compose_rate(b.exact_rate(), TransformKind::power, n));
}

MomentSequence product_moments(const DistributionSpec& base, int n, int check_k) {
    if (n < 1) throw ParameterError("product_moments: n must be >= 1");
    const MomentSequence b = base_moments(base);
    if (n > 1 && check_k > 0) {
        const double slack = b.exact() ? 0.0 : 1e-9;
        for (int k = 1; k <= check_k; ++k) {
            const double lx = log_moment(base, static_cast<double>(n) * k);
            const double ly = n * b.log_m(k);
            if (lx < ly - slack * std::max(1.0, std::abs(ly))) {
                throw DataError(base.name() + ": E[X_n^k] < E[Y_n^k] at k = " + std::to_string(k) +
                                    " (Lyapunov comparison violated)", k);
            }
        }
    }
    return MomentSequence([b, n](int k) { return n * b.log_m(k); }, b.exact(),
                          n == 1 ? b.source() : MomentSource::composed,
                          TransformSpec{TransformKind::product, n}.normalized().describe(base),
                          compose_rate(b.exact_rate(), TransformKind::product, n));
}

TransformedVariable make_transformed(const DistributionSpec& base, TransformSpec t) {
    t = t.normalized();
    switch (t.kind) {
        case TransformKind::identity:
            return {base, t, base_moments(base), DensityForm::closed};
        case TransformKind::power:
            return {base, t, power_moments(base, t.n), DensityForm::closed};
        case TransformKind::product: {
            DensityForm form = DensityForm::unavailable;
            if (t.n == 2) form = base.family() == Family::GG ? DensityForm::closed : DensityForm::mellin_numeric;
            return {base, t, product_moments(base, t.n), form};
        }
    }
    throw ParameterError("unknown transform");
}

double power_log_density(const DistributionSpec& base, int n, double z) {
    if (n < 1) throw ParameterError("power_density: n must be >= 1");
    if (!(z > 0.0)) throw DomainError("power_density: z must be > 0");
    if (n == 1) return log_density(base, z);
    const double lz = std::log(z);
    const double root = std::exp(lz / n);
    return -std::log(static_cast<double>(n)) + (1.0 / n - 1.0) * lz + log_density(base, root);
}

double power_density(const DistributionSpec& base, int n, double z) {
    return std::exp(power_log_density(base, n, z));
}

double product_log_density_pair(const DistributionSpec& base, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("product_density_pair: x must be > 0");
    const double lx = std::log(x);
    auto psi = [&](double t) {
        const double u = std::exp(t);
        const double v = std::exp(lx - t);
        if (u == 0.0 || v == 0.0 || u == inf || v == inf) return -inf;
        return log_density(base, u) + log_density(base, v);
    };
    const LogQuadResult r = log_integrate_exp(psi, -inf, inf, 1e-11, 0.5 * lx);
    if (r.rel_error > 1e-7) {
        throw NumericError("product_density_pair: relative error " + std::to_string(r.rel_error) + " at x = " +
                           std::to_string(x));
    }
    return r.log_value;
}

double product_density_pair(const DistributionSpec& base, double x) {
    return std::exp(product_log_density_pair(base, x));
}

double product_log_density_gg_closed(const GGParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("product_density_gg_closed: x must be > 0");
    return log_density(DistributionSpec::half_bessel(p), x);
}

double product_density_gg_closed(const GGParams& p, double x) {
    return std::exp(product_log_density_gg_closed(p, x));
}

ProductTailShape product_tail_shape(const GGParams& p) {
    return {p.gamma - p.beta / 4.0 - 1.0, 2.0 * p.alpha, p.beta / 2.0};
}

double transformed_log_density(const TransformedVariable& v, double x) {
    switch (v.transform.kind) {
        case TransformKind::identity: return log_density(v.base, x);
        case TransformKind::power: return power_log_density(v.base, v.transform.n, x);
        case TransformKind::product:
            if (v.transform.n == 2) {
                if (v.base.family() == Family::GG) return product_log_density_gg_closed(v.base.gg_params(), x);
                return product_log_density_pair(v.base, x);
            }
            throw ParameterError("density of a product of " + std::to_string(v.transform.n) +
                                 " factors is not computed pointwise; product indeterminacy is decided from the "
                                 "base density and survival function (Theorem 5)");
    }
    throw ParameterError("unknown transform");
}

}  // namespace momdet
