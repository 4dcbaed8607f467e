#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momdet/criteria.hpp"
#include "momdet/distributions.hpp"
#include "momdet/numerics.hpp"
#include "momdet/transforms.hpp"

namespace momdet {

enum class Verdict { M_det, M_indet, inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct GroundTruth {
    Verdict verdict = Verdict::M_det;
    std::string citation;
    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct DeterminacyReport {
    DistributionSpec base;
    TransformSpec transform;
    Verdict verdict = Verdict::inconclusive;
    std::string citation;    // theorem that decided the verdict
    std::string decided_by;  // criterion name, empty when inconclusive
    std::vector<CriterionOutcome> chain;
    std::optional<GroundTruth> ground_truth;
    std::optional<bool> agreement;  // set only for a non-inconclusive verdict with known truth
    NumericsConfig numerics;
    std::string diagnostics;

    std::string subject() const { return transform.describe(base); }
    friend bool operator==(const DeterminacyReport&, const DeterminacyReport&) = default;
};

DeterminacyReport analyze(const DistributionSpec& base, TransformSpec t, const NumericsConfig& cfg = {});

// Re-derives the verdict using only outcomes of the listed criteria, in chain order. A holding
// growth_det, carleman, hardy, cramer or proposition1 decides M_det; a holding
// growth_indet_cond2, krein or theorem5 decides M_indet.
DeterminacyReport restrict_criteria(DeterminacyReport r, const std::vector<Criterion>& allowed);

// Verdicts stated in closed form for the catalog: GG (any n, both transforms), half-logistic
// (any n), log-normal and log-skew-normal (identity), half-Bessel via its GG factors.
std::optional<GroundTruth> known_truth(const DistributionSpec& base, TransformSpec t);

struct Theorem6Row {
    int n = 0;
    Verdict power = Verdict::inconclusive;
    Verdict product = Verdict::inconclusive;
    bool agree = true;  // false only when both are decided and differ
};

struct Theorem6Suite {
    std::vector<Theorem6Row> rows;
    std::vector<DeterminacyReport> reports;  // power then product for each n
    bool all_agree = true;
    // max |ln m_k(GG(a,b,g)) - ln m_{g k}(GG(a,b/g,1))| over k <= k_max
    double gamma_reduction_max_err = 0.0;
    bool gamma_reduction_ok = true;
};

Theorem6Suite theorem6_suite(const GGParams& p, int n_max, const NumericsConfig& cfg = {});

}  // namespace momdet
