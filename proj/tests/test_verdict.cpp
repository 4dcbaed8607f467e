#include <doctest.h>

#include "momdet/errors.hpp"
#include "momdet/verdict.hpp"

using namespace momdet;

namespace {

bool ran(const DeterminacyReport& r, Criterion c) {
    for (const auto& o : r.chain)
        if (o.criterion == c) return true;
    return false;
}

}  // namespace

TEST_CASE("verdicts on the worked cases") {
    const auto exp1 = DistributionSpec::gg(1, 1, 1);
    const auto sq = analyze(exp1, TransformSpec::power(2));
    CHECK(sq.verdict == Verdict::M_det);
    CHECK(sq.ground_truth->verdict == Verdict::M_det);
    CHECK(*sq.agreement);

    const auto p3 = analyze(exp1, TransformSpec::product(3));
    CHECK(p3.verdict == Verdict::M_indet);
    CHECK(p3.citation == "Theorem 5");
    CHECK(p3.decided_by == "theorem5");

    const auto hn = DistributionSpec::gg(0.5, 2, 1);
    CHECK(analyze(hn, TransformSpec::product(4)).verdict == Verdict::M_det);
    CHECK(analyze(hn, TransformSpec::product(5)).verdict == Verdict::M_indet);

    const auto ln = analyze(DistributionSpec::lognormal01(), TransformSpec::identity());
    CHECK(ln.verdict == Verdict::M_indet);
    CHECK(ln.ground_truth->citation == "Remark 3");
    CHECK(ran(ln, Criterion::krein));
}

TEST_CASE("boundary n = 2 beta is determinate in rational arithmetic") {
    const auto r = analyze(DistributionSpec::gg(1, 1.5, 1), TransformSpec::power(3));
    CHECK(r.verdict == Verdict::M_det);
    CHECK(analyze(DistributionSpec::gg(1, 1.5, 1), TransformSpec::product(3)).verdict == Verdict::M_det);
    CHECK(analyze(DistributionSpec::gg(1, 1.5, 1), TransformSpec::product(4)).verdict == Verdict::M_indet);
}

TEST_CASE("known truth") {
    CHECK(known_truth(DistributionSpec::gg(1, 2, 3), TransformSpec::power(4))->verdict == Verdict::M_det);
    CHECK(known_truth(DistributionSpec::gg(1, 2, 3), TransformSpec::power(5))->verdict == Verdict::M_indet);
    CHECK(known_truth(DistributionSpec::half_logistic(), TransformSpec::product(2))->verdict == Verdict::M_det);
    CHECK(known_truth(DistributionSpec::lognormal01(), TransformSpec::identity())->verdict == Verdict::M_indet);
    CHECK_FALSE(known_truth(DistributionSpec::log_skew_normal(1), TransformSpec::product(2)));
    CHECK_FALSE(known_truth(DistributionSpec::half_bessel({1, 1, 1}), TransformSpec::power(2)));
    CHECK(known_truth(DistributionSpec::gg(1, 0.4, 1), TransformSpec::identity())->citation == "Corollary 2");
}

TEST_CASE("products of log-skew-normal have no ground truth") {
    const auto r = analyze(DistributionSpec::log_skew_normal(1), TransformSpec::product(2));
    CHECK_FALSE(r.ground_truth);
    CHECK_FALSE(r.agreement);
}

TEST_CASE("power and product verdict suite") {
    const auto s = theorem6_suite({1, 1, 1}, 5);
    REQUIRE(s.rows.size() == 5);
    const Verdict expect[] = {Verdict::M_det, Verdict::M_det, Verdict::M_indet, Verdict::M_indet, Verdict::M_indet};
    for (int i = 0; i < 5; ++i) {
        CHECK(s.rows[i].power == expect[i]);
        CHECK(s.rows[i].product == expect[i]);
    }
    CHECK(s.all_agree);
    CHECK(s.gamma_reduction_ok);

    const auto t = theorem6_suite({1, 2, 1}, 5);
    for (int i = 0; i < 4; ++i) CHECK(t.rows[i].product == Verdict::M_det);
    CHECK(t.rows[4].product == Verdict::M_indet);
    CHECK(t.rows[4].power == Verdict::M_indet);
    CHECK(t.all_agree);
    CHECK_THROWS_AS(theorem6_suite({1, 1, 1}, 1), ParameterError);
}

TEST_CASE("restricting the criteria") {
    const auto full = analyze(DistributionSpec::gg(1, 1, 1), TransformSpec::product(3));
    const auto only_growth = restrict_criteria(full, {Criterion::growth_det, Criterion::carleman});
    CHECK(only_growth.verdict == Verdict::inconclusive);
    CHECK_FALSE(only_growth.agreement);
    const auto with_t5 = restrict_criteria(full, {Criterion::theorem5});
    CHECK(with_t5.verdict == Verdict::M_indet);
    CHECK(*with_t5.agreement);
    const auto carleman = restrict_criteria(analyze(DistributionSpec::gg(1, 1, 1), TransformSpec::power(2)),
                                            {Criterion::carleman});
    CHECK(carleman.verdict == Verdict::M_det);
    CHECK(carleman.citation == "Carleman's condition");
}

TEST_CASE("numerical failures are reported, never silent") {
    NumericsConfig cfg;
    cfg.rate_lo = 5;
    cfg.rate_hi = 15;
    cfg.k_max = 30;
    CHECK_NOTHROW(analyze(DistributionSpec::gg(1, 1, 1), TransformSpec::identity(), cfg));
    cfg.rate_hi = 40;
    CHECK_THROWS_AS(analyze(DistributionSpec::gg(1, 1, 1), TransformSpec::identity(), cfg), ParameterError);

    // a very heavy log-skew-normal identity stays decided or reports its diagnostics
    const auto r = analyze(DistributionSpec::log_skew_normal(-3), TransformSpec::identity());
    if (r.verdict == Verdict::inconclusive) CHECK_FALSE(r.diagnostics.empty());
}
