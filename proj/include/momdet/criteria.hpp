#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "momdet/distributions.hpp"
#include "momdet/moments.hpp"
#include "momdet/rational.hpp"

namespace momdet {

enum class Criterion {
    carleman,
    cramer,
    hardy,
    growth_det,
    growth_indet_cond2,
    condition2,
    krein,
    theorem5,
    proposition1,
    moment_inequalities,
};

enum class Status { holds, fails, inconclusive };

const char* to_string(Criterion c);
const char* to_string(Status s);
Criterion criterion_from_string(const std::string& s);
Status status_from_string(const std::string& s);

// Rounds to 15 significant digits so the value survives a decimal round trip unchanged.
double quantize15(double v);
std::string format15(double v);
double parse15(const std::string& s);

// Named numeric evidence, ordered by key; values are quantized on insertion.
class Evidence {
public:
    void set(const std::string& key, double value) { values_[key] = quantize15(value); }
    double get(const std::string& key) const;
    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, double>& items() const { return values_; }
    friend bool operator==(const Evidence&, const Evidence&) = default;

private:
    std::map<std::string, double> values_;
};

struct CriterionOutcome {
    Criterion criterion = Criterion::carleman;
    Status status = Status::inconclusive;
    Evidence evidence;
    std::string cited;
    std::string reason;  // always set when inconclusive
    friend bool operator==(const CriterionOutcome&, const CriterionOutcome&) = default;
};

struct RateEstimate {
    double rho = 0.0;    // reported exponent (exact when known)
    double log_c = 0.0;  // reported ln C
    int k_lo = 0;
    int k_hi = 0;
    double residual = 0.0;  // max absolute deviation of the fit
    bool exact = false;
    bool superpolynomial = false;
    double fitted_rho = 0.0;
    double fitted_log_c = 0.0;
    std::optional<Rational> rho_rational;
};

// Least-squares fit of d_k = ln m_{k+1} - ln m_k on ln(k+1), 1 and 1/(k+1) for
// k in [k_lo, k_hi - 1]. The 1/(k+1) column absorbs the first-order correction of
// gamma-function ratios so ln C is not biased at moderate k.
RateEstimate estimate_growth_rate(const MomentSequence& seq, int k_lo, int k_hi, double rho_band = 0.02);

enum class RateSide { at_most_two, above_two, boundary };

// Exact rates compare in rationals when available; fitted rates inside |rho - 2| < band
// are boundary.
RateSide compare_rate_to_two(const RateEstimate& r, double rho_band);

CriterionOutcome carleman_classify(const MomentSequence& seq, int K, double tau_band = 0.05);

// a = 1/2: Hardy, a = 1: Cramer.
CriterionOutcome hardy_fit(const MomentSequence& seq, double a, int K, double tau_band = 0.05);

// L(ln x) supplied analytically, or numeric differentiation of ln f.
struct Condition2Input {
    std::function<double(double)> log_density;     // ln f(x)
    std::function<double(double)> analytic_L_log;  // optional: L_f as a function of ln x
    double x_min = 1.0;
};

CriterionOutcome check_condition2(const Condition2Input& in, double bound = 50.0);

// Analytic L_f of the n-th power of a catalog law, when registered.
std::function<double(double)> analytic_L_power(const DistributionSpec& base, int n);

// -ln g(x) ~ q x^r - p ln x + w (ln x)^2 + c as x -> inf; c is always fitted.
struct KreinTailModel {
    double q = 0.0;
    double r = 0.0;
    double p = 0.0;
    double w = 0.0;
};

struct KreinInput {
    std::function<double(double)> log_density;
    std::optional<KreinTailModel> model;
    double x_max = 1e4;  // upper limit of the numeric part, in the Krein variable
    double delta = 1e-3;
};

// K[g] = int_0^inf -ln g(x^2) / (1 + x^2) dx. holds == finite.
CriterionOutcome krein_quantity(const KreinInput& in);

// Supplied tail model of the n-th power of a catalog law.
std::optional<KreinTailModel> krein_model_power(const DistributionSpec& base, int n);

struct Theorem5Input {
    std::function<double(double)> log_f;
    std::function<double(double)> log_sf;
    std::optional<double> beta_hint;
    std::optional<Rational> beta_rational;
    int n = 2;
};

// holds == the product of n factors is M-indet by Theorem 5.
CriterionOutcome theorem5_check(const Theorem5Input& in);
Theorem5Input theorem5_input(const DistributionSpec& base, int n);

// Lemma 2 (m_1 m_k <= m_{k+1}; m_k <= m_{k+1} when m_1 >= 1) and Lyapunov monotonicity of
// ln m_k / k for k <= K.
// Throws DataError naming the first failing k.
CriterionOutcome moment_inequality_suite(const MomentSequence& seq, int K, double slack = 1e-9);

int max_det_power_from_rate(double rho);

// Checks, on x in grid (x > x0):
//   int_x^inf f(u)/u du >= A/(1+A) F(x)/x       (lower bound under the hazard condition)
//   int_x^inf f(u)/u du <= F(x)/x                (holds for any density)
//   F(x) <= F(x0) (x0/x)^A
struct HazardBounds {
    bool lower_ok = true;
    bool upper_ok = true;
    bool power_tail_ok = true;
    double min_lower_margin = 0.0;  // min over grid of (I - lower) / lower
    double min_upper_margin = 0.0;  // min over grid of (upper - I) / upper
    int points = 0;
};

HazardBounds hazard_integral_bounds(const DistributionSpec& spec, double A, double x0, const std::vector<double>& grid,
                                    double slack = 1e-9);

}  // namespace momdet
