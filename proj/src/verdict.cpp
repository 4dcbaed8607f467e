#include "momdet/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "momdet/errors.hpp"

namespace momdet {

void NumericsConfig::validate() const {
    if (k_max < 30) throw ParameterError("numerics.k_max must be >= 30");
    if (rate_lo < 1 || rate_hi > k_max || rate_hi - rate_lo < 10) {
        throw ParameterError("numerics.rate_window must lie in [1, k_max] and span at least 10");
    }
    if (!(quad_tol > 0.0) || !(rho_band > 0.0) || !(tau_band > 0.0) || !(krein_xmax > 1.0) || mc_samples < 1 ||
        !(cond2_bound > 0.0)) {
        throw ParameterError("numerics: tolerances, bands, krein_xmax and mc_samples must be positive");
    }
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::M_det: return "M_det";
        case Verdict::M_indet: return "M_indet";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::M_det, Verdict::M_indet, Verdict::inconclusive}) {
        if (s == to_string(v)) return v;
    }
    throw ParameterError("unknown verdict '" + s + "'");
}

namespace {

// n <= 2 beta, exactly when beta is a small fraction
bool at_most_twice(int n, double beta) {
    if (auto b = rational_from_double(beta)) return Rational::make(n, 1) <= Rational::make(2, 1) * *b;
    return n <= 2.0 * beta;
}

CriterionOutcome growth_outcome(const RateEstimate& r, RateSide side, TransformKind kind) {
    CriterionOutcome o;
    o.criterion = Criterion::growth_det;
    o.cited = kind == TransformKind::product ? "Theorem 2" : "Theorem 1";
    o.evidence.set("rho", r.rho);
    o.evidence.set("log_c", r.log_c);
    o.evidence.set("fitted_rho", r.fitted_rho);
    o.evidence.set("fitted_log_c", r.fitted_log_c);
    o.evidence.set("residual", r.residual);
    o.evidence.set("k_lo", r.k_lo);
    o.evidence.set("k_hi", r.k_hi);
    o.evidence.set("exact", r.exact ? 1.0 : 0.0);
    o.evidence.set("superpolynomial", r.superpolynomial ? 1.0 : 0.0);
    if (r.rho_rational) {
        o.evidence.set("rho_num", static_cast<double>(r.rho_rational->num));
        o.evidence.set("rho_den", static_cast<double>(r.rho_rational->den));
    }
    if (!r.superpolynomial && r.rho > 0.0) o.evidence.set("max_det_power", max_det_power_from_rate(r.rho));
    switch (side) {
        case RateSide::at_most_two: o.status = Status::holds; break;
        case RateSide::above_two: o.status = Status::fails; break;
        case RateSide::boundary:
            o.status = Status::inconclusive;
            o.reason = "fitted rate " + format15(r.rho) + " within the band around 2";
            break;
    }
    return o;
}

}  // namespace

std::optional<GroundTruth> known_truth(const DistributionSpec& base, TransformSpec t) {
    t = t.normalized();
    const int n = t.n;
    switch (base.family()) {
        case Family::GG: {
            const bool det = at_most_twice(n, base.gg_params().beta);
            if (n == 1) return GroundTruth{det ? Verdict::M_det : Verdict::M_indet, det ? "Theorem 1" : "Corollary 2"};
            return GroundTruth{det ? Verdict::M_det : Verdict::M_indet, "Theorem 6"};
        }
        case Family::HalfLogistic:
            return GroundTruth{n <= 2 ? Verdict::M_det : Verdict::M_indet, "half-logistic Statement"};
        case Family::LogNormal01:
            if (t.kind == TransformKind::identity) return GroundTruth{Verdict::M_indet, "Remark 3"};
            return std::nullopt;
        case Family::LogSkewNormal:
            if (t.kind == TransformKind::identity) return GroundTruth{Verdict::M_indet, "Theorem 4"};
            return std::nullopt;
        case Family::HalfBessel: {
            // identity and products are products of 2n GG factors
            if (t.kind == TransformKind::power) return std::nullopt;
            const bool det = at_most_twice(2 * n, base.gg_params().beta);
            return GroundTruth{det ? Verdict::M_det : Verdict::M_indet, "Theorem 6 with Lemma 1"};
        }
    }
    return std::nullopt;
}

DeterminacyReport analyze(const DistributionSpec& base, TransformSpec t, const NumericsConfig& cfg) {
    cfg.validate();
    t = t.normalized();
    DeterminacyReport rep{.base = base, .transform = t};
    rep.numerics = cfg;
    rep.ground_truth = known_truth(base, t);

    auto decide = [&rep](Verdict v, const CriterionOutcome& by) {
        if (rep.verdict != Verdict::inconclusive) return;
        rep.verdict = v;
        rep.citation = by.cited;
        rep.decided_by = to_string(by.criterion);
    };

    try {
        const TransformedVariable var = make_transformed(base, t);
        const MomentSequence& seq = var.moments;
        rep.chain.push_back(moment_inequality_suite(seq, cfg.k_max));

        const RateEstimate rate = estimate_growth_rate(seq, cfg.rate_lo, cfg.rate_hi, cfg.rho_band);
        const RateSide side = compare_rate_to_two(rate, cfg.rho_band);
        const CriterionOutcome growth = growth_outcome(rate, side, t.kind);
        rep.chain.push_back(growth);
        rep.chain.push_back(carleman_classify(seq, cfg.k_max, cfg.tau_band));

        if (side == RateSide::at_most_two) {
            decide(Verdict::M_det, growth);
            rep.chain.push_back(hardy_fit(seq, 0.5, cfg.k_max, cfg.tau_band));
        }

        if (side == RateSide::above_two) {
            const bool has_density = t.kind != TransformKind::product || (t.n == 2 && base.family() == Family::GG);
            if (has_density) {
                Condition2Input c2;
                c2.log_density = [&var](double x) { return transformed_log_density(var, x); };
                std::optional<KreinTailModel> model;
                if (t.kind == TransformKind::product) {
                    model = krein_model_power(DistributionSpec::half_bessel(base.gg_params()), 1);
                } else {
                    c2.analytic_L_log = analytic_L_power(base, t.n);
                    model = krein_model_power(base, t.n);
                }
                const CriterionOutcome cond2 = check_condition2(c2, cfg.cond2_bound);
                rep.chain.push_back(cond2);

                CriterionOutcome thm4;
                thm4.criterion = Criterion::growth_indet_cond2;
                thm4.cited = "Theorem 4";
                thm4.evidence.set("rho", rate.rho);
                thm4.evidence.set("L_end", cond2.evidence.get("L_end"));
                thm4.status = cond2.status;
                thm4.reason = cond2.reason;
                rep.chain.push_back(thm4);
                if (thm4.status == Status::holds) decide(Verdict::M_indet, thm4);

                KreinInput kin;
                kin.log_density = c2.log_density;
                kin.model = model;
                kin.x_max = cfg.krein_xmax;
                const CriterionOutcome krein = krein_quantity(kin);
                rep.chain.push_back(krein);
                if (krein.status == Status::holds) decide(Verdict::M_indet, krein);
            }
            if (t.kind == TransformKind::product || t.kind == TransformKind::identity) {
                CriterionOutcome t5 = theorem5_check(theorem5_input(base, t.n));
                if (t.kind == TransformKind::identity) t5.cited = "Corollary 2";
                rep.chain.push_back(t5);
                if (t5.status == Status::holds) decide(Verdict::M_indet, t5);
            }
        }

        if (rep.verdict == Verdict::inconclusive && t.kind == TransformKind::product) {
            // a product inherits determinacy from the power with the same n
            const MomentSequence pw = power_moments(base, t.n);
            const CriterionOutcome checks[] = {carleman_classify(pw, cfg.k_max, cfg.tau_band),
                                               hardy_fit(pw, 0.5, cfg.k_max, cfg.tau_band),
                                               hardy_fit(pw, 1.0, cfg.k_max, cfg.tau_band)};
            CriterionOutcome p1;
            p1.criterion = Criterion::proposition1;
            p1.cited = "Proposition 1";
            p1.status = Status::inconclusive;
            p1.reason = "the power X_n satisfies none of Carleman, Hardy, Cramer";
            for (const CriterionOutcome& c : checks) {
                p1.evidence.set(std::string(to_string(c.criterion)) + "_holds", c.status == Status::holds ? 1.0 : 0.0);
                if (c.status == Status::holds) {
                    p1.status = Status::holds;
                    p1.reason.clear();
                }
            }
            rep.chain.push_back(p1);
            if (p1.status == Status::holds) decide(Verdict::M_det, p1);
        }
        if (rep.verdict == Verdict::inconclusive) {
            rep.diagnostics = side == RateSide::boundary ? "moment growth rate too close to 2 to classify"
                                                         : "no criterion reached a conclusion";
        }
    } catch (const DataError& e) {
        rep.verdict = Verdict::inconclusive;
        rep.citation.clear();
        rep.decided_by.clear();
        rep.diagnostics = std::string("moment sequence rejected: ") + e.what();
    } catch (const NumericError& e) {
        rep.verdict = Verdict::inconclusive;
        rep.citation.clear();
        rep.decided_by.clear();
        rep.diagnostics = std::string("numerical failure: ") + e.what();
    } catch (const DomainError& e) {
        rep.verdict = Verdict::inconclusive;
        rep.citation.clear();
        rep.decided_by.clear();
        rep.diagnostics = std::string("domain error: ") + e.what();
    }

    if (rep.ground_truth && rep.verdict != Verdict::inconclusive) {
        rep.agreement = rep.verdict == rep.ground_truth->verdict;
    }
    return rep;
}

DeterminacyReport restrict_criteria(DeterminacyReport r, const std::vector<Criterion>& allowed) {
    r.verdict = Verdict::inconclusive;
    r.citation.clear();
    r.decided_by.clear();
    r.agreement.reset();
    for (const CriterionOutcome& o : r.chain) {
        if (o.status != Status::holds || std::find(allowed.begin(), allowed.end(), o.criterion) == allowed.end()) continue;
        std::optional<Verdict> v;
        switch (o.criterion) {
            case Criterion::growth_det:
            case Criterion::carleman:
            case Criterion::hardy:
            case Criterion::cramer:
            case Criterion::proposition1: v = Verdict::M_det; break;
            case Criterion::growth_indet_cond2:
            case Criterion::krein:
            case Criterion::theorem5: v = Verdict::M_indet; break;
            default: break;
        }
        if (!v) continue;
        r.verdict = *v;
        r.citation = o.cited;
        r.decided_by = to_string(o.criterion);
        break;
    }
    if (r.verdict == Verdict::inconclusive) {
        if (r.diagnostics.empty()) r.diagnostics = "no selected criterion reached a conclusion";
    } else {
        r.diagnostics.clear();
        if (r.ground_truth) r.agreement = r.verdict == r.ground_truth->verdict;
    }
    return r;
}

Theorem6Suite theorem6_suite(const GGParams& p, int n_max, const NumericsConfig& cfg) {
    if (n_max < 2) throw ParameterError("theorem6_suite: n_max must be >= 2");
    Theorem6Suite suite;
    const DistributionSpec base = DistributionSpec::gg(p);
    for (int n = 1; n <= n_max; ++n) {
        DeterminacyReport pw = analyze(base, TransformSpec::power(n), cfg);
        DeterminacyReport pr = analyze(base, TransformSpec::product(n), cfg);
        Theorem6Row row{n, pw.verdict, pr.verdict, true};
        if (pw.verdict != Verdict::inconclusive && pr.verdict != Verdict::inconclusive) row.agree = pw.verdict == pr.verdict;
        suite.all_agree = suite.all_agree && row.agree;
        suite.rows.push_back(row);
        suite.reports.push_back(std::move(pw));
        suite.reports.push_back(std::move(pr));
    }
    // eta = xi^gamma ~ GG(alpha, beta/gamma, 1)
    const GGParams reduced{p.alpha, p.beta / p.gamma, 1.0};
    for (int k = 1; k <= cfg.k_max; ++k) {
        const double lhs = gg_log_moment(p, p.gamma * k);
        const double rhs = gg_log_moment(reduced, k);
        suite.gamma_reduction_max_err = std::max(suite.gamma_reduction_max_err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    suite.gamma_reduction_ok = suite.gamma_reduction_max_err <= 1e-12;
    return suite;
}

}  // namespace momdet
