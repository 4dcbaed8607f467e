#include "momdet/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "momdet/errors.hpp"

namespace momdet {

using nlohmann::json;

namespace {

std::string exact17(double v) {
    if (!std::isfinite(v)) return format15(v);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("report: missing key '") + key + "'");
    return j.at(key);
}

double real_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (v.is_string()) return parse15(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
    throw ParameterError(std::string("report: '") + key + "' must be a number or decimal string");
}

json outcome_json(const CriterionOutcome& o) {
    json ev = json::object();
    for (const auto& [k, v] : o.evidence.items()) ev[k] = format15(v);
    return {{"criterion", to_string(o.criterion)},
            {"status", to_string(o.status)},
            {"evidence", ev},
            {"cited", o.cited},
            {"reason", o.reason}};
}

CriterionOutcome outcome_from_json(const json& j) {
    CriterionOutcome o;
    o.criterion = criterion_from_string(field(j, "criterion").get<std::string>());
    o.status = status_from_string(field(j, "status").get<std::string>());
    for (const auto& [k, v] : field(j, "evidence").items()) o.evidence.set(k, parse15(v.get<std::string>()));
    o.cited = field(j, "cited").get<std::string>();
    o.reason = j.value("reason", "");
    return o;
}

}  // namespace

json to_json(const NumericsConfig& c) {
    return {{"k_max", c.k_max},
            {"rate_window", {c.rate_lo, c.rate_hi}},
            {"quad_tol", exact17(c.quad_tol)},
            {"rho_band", exact17(c.rho_band)},
            {"tau_band", exact17(c.tau_band)},
            {"krein_xmax", exact17(c.krein_xmax)},
            {"mc_samples", c.mc_samples},
            {"seed", c.seed},
            {"cond2_bound", exact17(c.cond2_bound)}};
}

NumericsConfig numerics_from_json(const json& j) {
    NumericsConfig c;
    c.k_max = field(j, "k_max").get<int>();
    const json& w = field(j, "rate_window");
    c.rate_lo = w.at(0).get<int>();
    c.rate_hi = w.at(1).get<int>();
    c.quad_tol = real_field(j, "quad_tol");
    c.rho_band = real_field(j, "rho_band");
    c.tau_band = real_field(j, "tau_band");
    c.krein_xmax = real_field(j, "krein_xmax");
    c.mc_samples = field(j, "mc_samples").get<std::int64_t>();
    c.seed = field(j, "seed").get<std::uint64_t>();
    c.cond2_bound = real_field(j, "cond2_bound");
    return c;
}

json to_json(const DistributionSpec& s) {
    json j = {{"family", to_string(s.family())}};
    if (s.family() == Family::GG || s.family() == Family::HalfBessel) {
        const GGParams& p = s.gg_params();
        j["alpha"] = exact17(p.alpha);
        j["beta"] = exact17(p.beta);
        j["gamma"] = exact17(p.gamma);
    }
    if (s.family() == Family::LogSkewNormal) j["lambda"] = exact17(s.lambda());
    return j;
}

DistributionSpec distribution_from_json(const json& j) {
    switch (family_from_string(field(j, "family").get<std::string>())) {
        case Family::GG:
            return DistributionSpec::gg(real_field(j, "alpha"), real_field(j, "beta"), real_field(j, "gamma"));
        case Family::HalfBessel:
            return DistributionSpec::half_bessel({real_field(j, "alpha"), real_field(j, "beta"), real_field(j, "gamma")});
        case Family::HalfLogistic: return DistributionSpec::half_logistic();
        case Family::LogNormal01: return DistributionSpec::lognormal01();
        case Family::LogSkewNormal: return DistributionSpec::log_skew_normal(real_field(j, "lambda"));
    }
    throw ParameterError("report: unknown family");
}

json to_json(const DeterminacyReport& r) {
    json chain = json::array();
    for (const CriterionOutcome& o : r.chain) chain.push_back(outcome_json(o));
    json truth = nullptr;
    if (r.ground_truth) truth = {{"verdict", to_string(r.ground_truth->verdict)}, {"citation", r.ground_truth->citation}};
    json agreement = nullptr;
    if (r.agreement) agreement = *r.agreement;
    return {{"subject", r.subject()},
            {"base", to_json(r.base)},
            {"transform", {{"kind", to_string(r.transform.kind)}, {"n", r.transform.n}}},
            {"verdict", to_string(r.verdict)},
            {"citation", r.citation},
            {"decided_by", r.decided_by},
            {"chain", chain},
            {"ground_truth", truth},
            {"agreement", agreement},
            {"numerics", to_json(r.numerics)},
            {"diagnostics", r.diagnostics},
            {"tool_version", tool_version}};
}

DeterminacyReport report_from_json(const json& j) {
    const json& t = field(j, "transform");
    DeterminacyReport r{.base = distribution_from_json(field(j, "base")),
                        .transform = TransformSpec{transform_kind_from_string(field(t, "kind").get<std::string>()),
                                                   field(t, "n").get<int>()}};
    r.verdict = verdict_from_string(field(j, "verdict").get<std::string>());
    r.citation = field(j, "citation").get<std::string>();
    r.decided_by = field(j, "decided_by").get<std::string>();
    for (const json& o : field(j, "chain")) r.chain.push_back(outcome_from_json(o));
    const json& truth = field(j, "ground_truth");
    if (!truth.is_null()) {
        r.ground_truth = GroundTruth{verdict_from_string(field(truth, "verdict").get<std::string>()),
                                     field(truth, "citation").get<std::string>()};
    }
    const json& agreement = field(j, "agreement");
    if (!agreement.is_null()) r.agreement = agreement.get<bool>();
    r.numerics = numerics_from_json(field(j, "numerics"));
    r.diagnostics = field(j, "diagnostics").get<std::string>();
    return r;
}

std::string emit_json(const DeterminacyReport& r) { return to_json(r).dump(2); }

DeterminacyReport parse_json(const std::string& text) {
    try {
        return report_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw ParameterError(std::string("report: ") + e.what());
    }
}

std::string render_text(const DeterminacyReport& r) {
    std::ostringstream out;
    out << "subject:      " << r.subject() << '\n';
    out << "verdict:      " << to_string(r.verdict);
    if (!r.citation.empty()) out << " (" << r.citation << ", via " << r.decided_by << ")";
    out << '\n';
    if (r.ground_truth) {
        out << "ground truth: " << to_string(r.ground_truth->verdict) << " (" << r.ground_truth->citation << ")";
        if (r.agreement) out << (*r.agreement ? "  agreement: yes" : "  agreement: NO");
        out << '\n';
    } else {
        out << "ground truth: absent\n";
    }
    if (!r.diagnostics.empty()) out << "diagnostics:  " << r.diagnostics << '\n';
    out << "chain:\n";
    for (const CriterionOutcome& o : r.chain) {
        char head[96];
        std::snprintf(head, sizeof head, "  %-20s %-13s", to_string(o.criterion), to_string(o.status));
        out << head << o.cited << '\n';
        if (!o.reason.empty()) out << "      reason: " << o.reason << '\n';
        std::string line;
        for (const auto& [k, v] : o.evidence.items()) {
            const std::string item = k + "=" + format15(v);
            if (!line.empty() && line.size() + item.size() > 92) {
                out << "      " << line << '\n';
                line.clear();
            }
            line += (line.empty() ? "" : "  ") + item;
        }
        if (!line.empty()) out << "      " << line << '\n';
    }
    return out.str();
}

}  // namespace momdet
