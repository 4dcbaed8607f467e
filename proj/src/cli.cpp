#include "momdet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "momdet/errors.hpp"
#include "momdet/oracle.hpp"
#include "momdet/rational.hpp"
#include "momdet/report.hpp"
#include "momdet/verdict.hpp"

namespace momdet {

using nlohmann::json;

// ---------------------------------------------------------------------------------------------
// job documents

namespace {

void check_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw JobError(ptr.empty() ? "/" : ptr, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known) throw JobError(ptr + "/" + key, "unknown key");
    }
}

double real_at(const json& v, const std::string& ptr) {
    try {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) return parse_real(v.get<std::string>());
    } catch (const ParameterError& e) {
        throw JobError(ptr, e.what());
    }
    throw JobError(ptr, "expected a number or a string such as \"1/2\"");
}

template <class T>
T integer_at(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) throw JobError(ptr, "expected an integer");
    return v.get<T>();
}

std::string string_at(const json& v, const std::string& ptr) {
    if (!v.is_string()) throw JobError(ptr, "expected a string");
    return v.get<std::string>();
}

bool takes_gg_params(const std::string& family) { return family == "gg" || family == "half-bessel"; }

}  // namespace

DistributionSpec JobSpec::distribution() const {
    const Family f = family_from_string(family);
    const bool gg_like = f == Family::GG || f == Family::HalfBessel;
    if (!gg_like && (alpha || beta || gamma)) {
        throw ParameterError("alpha, beta and gamma apply only to gg and half-bessel, not " + family);
    }
    if (f != Family::LogSkewNormal && lambda) throw ParameterError("lambda applies only to log-skew-normal");
    switch (f) {
        case Family::GG: return DistributionSpec::gg(alpha.value_or(1.0), beta.value_or(1.0), gamma.value_or(1.0));
        case Family::HalfBessel:
            return DistributionSpec::half_bessel({alpha.value_or(1.0), beta.value_or(1.0), gamma.value_or(1.0)});
        case Family::HalfLogistic: return DistributionSpec::half_logistic();
        case Family::LogNormal01: return DistributionSpec::lognormal01();
        case Family::LogSkewNormal:
            if (!lambda) throw ParameterError("log-skew-normal requires lambda");
            return DistributionSpec::log_skew_normal(*lambda);
    }
    throw ParameterError("unknown family");
}

TransformSpec JobSpec::transform_spec() const {
    const TransformKind kind = transform_kind_from_string(transform);
    return TransformSpec{kind, kind == TransformKind::identity ? 1 : n}.normalized();
}

JobSpec parse_job(const json& doc, JobSpec job) {
    check_keys(doc, "", {"distribution", "transform", "criteria", "numerics", "output"});

    if (doc.contains("distribution")) {
        const json& d = doc.at("distribution");
        check_keys(d, "/distribution", {"family", "alpha", "beta", "gamma", "lambda"});
        if (d.contains("family")) {
            job.family = string_at(d.at("family"), "/distribution/family");
            try {
                family_from_string(job.family);
            } catch (const ParameterError& e) {
                throw JobError("/distribution/family", e.what());
            }
        }
        for (const char* key : {"alpha", "beta", "gamma"}) {
            if (!d.contains(key)) continue;
            const std::string ptr = std::string("/distribution/") + key;
            if (!takes_gg_params(job.family)) throw JobError(ptr, "not a parameter of " + job.family);
            const double v = real_at(d.at(key), ptr);
            if (key[0] == 'a') job.alpha = v;
            if (key[0] == 'b') job.beta = v;
            if (key[0] == 'g') job.gamma = v;
        }
        if (d.contains("lambda")) {
            if (job.family != "log-skew-normal") throw JobError("/distribution/lambda", "not a parameter of " + job.family);
            job.lambda = real_at(d.at("lambda"), "/distribution/lambda");
        }
    }

    if (doc.contains("transform")) {
        const json& t = doc.at("transform");
        check_keys(t, "/transform", {"kind", "n"});
        if (t.contains("kind")) {
            job.transform = string_at(t.at("kind"), "/transform/kind");
            try {
                transform_kind_from_string(job.transform);
            } catch (const ParameterError& e) {
                throw JobError("/transform/kind", e.what());
            }
        }
        if (t.contains("n")) {
            job.n = integer_at<int>(t.at("n"), "/transform/n");
            if (job.n < 1) throw JobError("/transform/n", "must be >= 1");
        }
    }

    if (doc.contains("criteria")) {
        const json& c = doc.at("criteria");
        if (c.is_string() && c.get<std::string>() == "auto") {
            job.criteria.reset();
        } else if (c.is_array()) {
            std::vector<Criterion> list;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const std::string ptr = "/criteria/" + std::to_string(i);
                try {
                    list.push_back(criterion_from_string(string_at(c[i], ptr)));
                } catch (const ParameterError& e) {
                    throw JobError(ptr, e.what());
                }
            }
            job.criteria = list;
        } else {
            throw JobError("/criteria", "expected \"auto\" or a list of criterion names");
        }
    }

    if (doc.contains("numerics")) {
        const json& nm = doc.at("numerics");
        check_keys(nm, "/numerics",
                   {"k_max", "rate_window", "quad_tol", "rho_band", "tau_band", "krein_xmax", "mc_samples", "seed",
                    "cond2_bound"});
        NumericsConfig& c = job.numerics;
        if (nm.contains("k_max")) c.k_max = integer_at<int>(nm.at("k_max"), "/numerics/k_max");
        if (nm.contains("rate_window")) {
            const json& w = nm.at("rate_window");
            if (!w.is_array() || w.size() != 2) throw JobError("/numerics/rate_window", "expected [lo, hi]");
            c.rate_lo = integer_at<int>(w[0], "/numerics/rate_window/0");
            c.rate_hi = integer_at<int>(w[1], "/numerics/rate_window/1");
        }
        if (nm.contains("quad_tol")) c.quad_tol = real_at(nm.at("quad_tol"), "/numerics/quad_tol");
        if (nm.contains("rho_band")) c.rho_band = real_at(nm.at("rho_band"), "/numerics/rho_band");
        if (nm.contains("tau_band")) c.tau_band = real_at(nm.at("tau_band"), "/numerics/tau_band");
        if (nm.contains("krein_xmax")) c.krein_xmax = real_at(nm.at("krein_xmax"), "/numerics/krein_xmax");
        if (nm.contains("mc_samples")) c.mc_samples = integer_at<std::int64_t>(nm.at("mc_samples"), "/numerics/mc_samples");
        if (nm.contains("seed")) c.seed = integer_at<std::uint64_t>(nm.at("seed"), "/numerics/seed");
        if (nm.contains("cond2_bound")) c.cond2_bound = real_at(nm.at("cond2_bound"), "/numerics/cond2_bound");
        try {
            c.validate();
        } catch (const ParameterError& e) {
            throw JobError("/numerics", e.what());
        }
    }

    if (doc.contains("output")) {
        job.output = string_at(doc.at("output"), "/output");
        if (job.output != "text" && job.output != "json") throw JobError("/output", "expected \"text\" or \"json\"");
    }
    return job;
}

// ---------------------------------------------------------------------------------------------
// commands

namespace {

struct JobFlags {
    std::string config;
    std::string family, alpha, beta, gamma, lambda, transform, criteria, output;
    int n = 1;
    std::uint64_t seed = 0;
    CLI::Option* o_family = nullptr;
    CLI::Option* o_alpha = nullptr;
    CLI::Option* o_beta = nullptr;
    CLI::Option* o_gamma = nullptr;
    CLI::Option* o_lambda = nullptr;
    CLI::Option* o_transform = nullptr;
    CLI::Option* o_n = nullptr;
    CLI::Option* o_criteria = nullptr;
    CLI::Option* o_output = nullptr;
    CLI::Option* o_seed = nullptr;

    void attach(CLI::App* cmd, bool with_output) {
        cmd->add_option("--config", config, "JSON job file; flags override its values");
        o_family = cmd->add_option("--family", family, "gg | half-logistic | lognormal | log-skew-normal | half-bessel");
        o_alpha = cmd->add_option("--alpha", alpha, "GG rate alpha (decimal or p/q, default 1)");
        o_beta = cmd->add_option("--beta", beta, "GG exponent beta (decimal or p/q, default 1)");
        o_gamma = cmd->add_option("--gamma", gamma, "GG shape gamma (decimal or p/q, default 1)");
        o_lambda = cmd->add_option("--lambda", lambda, "log-skew-normal skewness");
        o_transform = cmd->add_option("--transform", transform, "identity | power | product");
        o_n = cmd->add_option("--n", n, "transform order");
        o_seed = cmd->add_option("--seed", seed, "root seed (overrides MOMDET_SEED and the config file)");
        if (with_output) {
            o_criteria = cmd->add_option("--criteria", criteria, "auto or a comma-separated list of criteria");
            o_output = cmd->add_option("--output", output, "text | json")->check(CLI::IsMember({"text", "json"}));
        }
    }

    // defaults < config file < MOMDET_SEED < flags
    JobSpec resolve() const {
        JobSpec job;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) throw ParameterError("cannot open config file '" + config + "'");
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                throw ParameterError("config file '" + config + "' is not valid JSON: " + e.what());
            }
            job = parse_job(doc, job);
        }
        if (const char* env = std::getenv("MOMDET_SEED")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (*env == '\0' || *end != '\0') throw ParameterError(std::string("MOMDET_SEED is not an integer: '") + env + "'");
            job.numerics.seed = v;
        }
        if (o_family->count()) {
            if (family != job.family) job.alpha = job.beta = job.gamma = job.lambda = std::nullopt;
            job.family = family;
        }
        if (o_alpha->count()) job.alpha = parse_real(alpha);
        if (o_beta->count()) job.beta = parse_real(beta);
        if (o_gamma->count()) job.gamma = parse_real(gamma);
        if (o_lambda->count()) job.lambda = parse_real(lambda);
        if (o_transform->count()) job.transform = transform;
        if (o_n->count()) job.n = n;
        if (o_seed->count()) job.numerics.seed = seed;
        if (o_criteria && o_criteria->count()) {
            if (criteria == "auto") {
                job.criteria.reset();
            } else {
                std::vector<Criterion> list;
                std::stringstream ss(criteria);
                for (std::string item; std::getline(ss, item, ',');) list.push_back(criterion_from_string(item));
                job.criteria = list;
            }
        }
        if (o_output && o_output->count()) job.output = output;
        return job;
    }
};

int exit_code(const DeterminacyReport& r) {
    if (r.verdict == Verdict::inconclusive) return 2;
    if (r.agreement && !*r.agreement) return 1;
    return 0;
}

int cmd_analyze(const JobFlags& flags, std::ostream& out) {
    const JobSpec job = flags.resolve();
    DeterminacyReport rep = analyze(job.distribution(), job.transform_spec(), job.numerics);
    if (job.criteria) rep = restrict_criteria(std::move(rep), *job.criteria);
    if (job.output == "json") {
        out << emit_json(rep) << '\n';
    } else {
        out << render_text(rep);
    }
    return exit_code(rep);
}

struct TableFlags {
    std::string family = "gg";
    std::vector<std::string> alpha{"1/2", "1", "2"}, beta{"1/2", "1", "2"}, gamma{"1/2", "1", "2"};
    std::vector<std::string> lambda{"1"};
    std::string transform = "both";
    int n_max = 6;
    int workers = 0;
    std::string output = "text";
    std::string json_out;
};

struct TableCell {
    std::size_t row = 0;
    int n = 1;
    DeterminacyReport report;
};

std::string cell_label(const DeterminacyReport& r) {
    switch (r.verdict) {
        case Verdict::M_det: return "det";
        case Verdict::M_indet: return "indet";
        case Verdict::inconclusive: return "?";
    }
    return "?";
}

const char* cell_marker(const DeterminacyReport& r) {
    if (!r.agreement) return r.ground_truth ? " " : "·";
    return *r.agreement ? "✓" : "✗";
}

int cmd_table(const TableFlags& f, std::ostream& out) {
    if (f.n_max < 1) throw ParameterError("--n-max must be >= 1");
    std::vector<DistributionSpec> bases;
    const Family fam = family_from_string(f.family);
    if (fam == Family::GG || fam == Family::HalfBessel) {
        for (const auto& a : f.alpha)
            for (const auto& b : f.beta)
                for (const auto& g : f.gamma) {
                    const GGParams p{parse_real(a), parse_real(b), parse_real(g)};
                    bases.push_back(fam == Family::GG ? DistributionSpec::gg(p) : DistributionSpec::half_bessel(p));
                }
    } else if (fam == Family::LogSkewNormal) {
        for (const auto& l : f.lambda) bases.push_back(DistributionSpec::log_skew_normal(parse_real(l)));
    } else {
        bases.push_back(fam == Family::HalfLogistic ? DistributionSpec::half_logistic() : DistributionSpec::lognormal01());
    }
    std::vector<TransformKind> kinds;
    if (f.transform == "both" || f.transform == "power") kinds.push_back(TransformKind::power);
    if (f.transform == "both" || f.transform == "product") kinds.push_back(TransformKind::product);
    if (kinds.empty()) throw ParameterError("--transform must be power, product or both");

    struct Row {
        DistributionSpec base;
        TransformKind kind;
    };
    std::vector<Row> rows;
    for (const auto& b : bases)
        for (TransformKind k : kinds) rows.push_back({b, k});

    NumericsConfig cfg;
    if (const char* env = std::getenv("MOMDET_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

    const std::size_t total = rows.size() * static_cast<std::size_t>(f.n_max);
    std::vector<std::optional<DeterminacyReport>> results(total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const Row& row = rows[i / f.n_max];
            const int n = static_cast<int>(i % f.n_max) + 1;
            results[i] = analyze(row.base, TransformSpec{row.kind, n}.normalized(), cfg);
        }
    };
    const int workers = f.workers > 0 ? f.workers : std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    int decided = 0, agree = 0, contradictions = 0, untested = 0;
    for (const auto& r : results) {
        if (r->verdict != Verdict::inconclusive) ++decided;
        if (r->agreement) (*r->agreement ? agree : contradictions)++;
        if (!r->ground_truth) ++untested;
    }

    json twin = {{"family", f.family}, {"n_max", f.n_max}, {"rows", json::array()}};
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        json cells = json::array();
        for (int n = 1; n <= f.n_max; ++n) {
            const DeterminacyReport& r = *results[ri * f.n_max + (n - 1)];
            json truth = nullptr;
            if (r.ground_truth) truth = {{"verdict", to_string(r.ground_truth->verdict)}, {"citation", r.ground_truth->citation}};
            json agreement = nullptr;
            if (r.agreement) agreement = *r.agreement;
            cells.push_back({{"n", n},
                             {"verdict", to_string(r.verdict)},
                             {"citation", r.citation},
                             {"ground_truth", truth},
                             {"agreement", agreement}});
        }
        twin["rows"].push_back({{"subject", rows[ri].base.name()},
                                {"base", to_json(rows[ri].base)},
                                {"transform", to_string(rows[ri].kind)},
                                {"cells", cells}});
    }
    twin["summary"] = {{"cells", total},
                       {"decided", decided},
                       {"agree", agree},
                       {"contradictions", contradictions},
                       {"no_ground_truth", untested}};

    if (!f.json_out.empty()) {
        std::ofstream js(f.json_out);
        if (!js) throw ParameterError("cannot write '" + f.json_out + "'");
        js << twin.dump(2) << '\n';
    }
    if (f.output == "json") {
        out << twin.dump(2) << '\n';
    } else {
        std::size_t width = 8;
        for (const Row& r : rows) width = std::max(width, r.base.name().size() + 2);
        std::string head = "subject";
        head.resize(width, ' ');
        head += "transform ";
        for (int n = 1; n <= f.n_max; ++n) {
            std::string col = "n=" + std::to_string(n);
            col.resize(9, ' ');
            head += col;
        }
        while (head.back() == ' ') head.pop_back();
        out << head << '\n';
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            std::string line = rows[ri].base.name();
            line.resize(width, ' ');
            std::string kind = to_string(rows[ri].kind);
            kind.resize(10, ' ');
            line += kind;
            for (int n = 1; n <= f.n_max; ++n) {
                const DeterminacyReport& r = *results[ri * f.n_max + (n - 1)];
                const std::string label = cell_label(r);
                line += label + " " + cell_marker(r) + std::string(label.size() < 7 ? 7 - label.size() : 1, ' ');
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
        char summary[200];
        std::snprintf(summary, sizeof summary,
                      "cells %zu, decided %d (%.1f%%), agree %d, contradictions %d, no ground truth %d\n", total,
                      decided, 100.0 * decided / static_cast<double>(total), agree, contradictions, untested);
        out << summary;
    }
    return contradictions > 0 ? 1 : 0;
}

struct VerifyFlags {
    std::vector<std::string> only;
    std::int64_t mc_samples = NumericsConfig{}.mc_samples;
    std::uint64_t seed = NumericsConfig{}.seed;
    CLI::Option* o_seed = nullptr;
    int workers = 0;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
    static const char* const names[] = {"lemma1-convolution", "k0-mellin", "eq1", "quad-closed", "mc-quad"};
    std::vector<std::string> selected = f.only;
    if (selected.empty()) selected.assign(std::begin(names), std::end(names));
    std::uint64_t seed = f.seed;
    if (!f.o_seed->count()) {
        if (const char* env = std::getenv("MOMDET_SEED")) seed = std::strtoull(env, nullptr, 10);
    }
    const int workers = f.workers > 0 ? f.workers : std::max(1u, std::thread::hardware_concurrency());

    std::vector<CheckResult> results;
    for (const std::string name : names) {
        if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
        try {
            if (name == "lemma1-convolution") results.push_back(check_lemma1_convolution());
            if (name == "k0-mellin") results.push_back(check_k0_mellin());
            if (name == "eq1") results.push_back(check_eq1());
            if (name == "quad-closed") results.push_back(check_quad_closed());
            if (name == "mc-quad") {
                for (CheckResult& r : check_mc_quad(f.mc_samples, seed, workers)) results.push_back(std::move(r));
            }
        } catch (const std::exception& e) {
            std::string id = name;
            std::replace(id.begin(), id.end(), '-', '_');
            results.push_back({.name = id, .pass = false, .max_rel_err = 0.0, .detail = std::string("error: ") + e.what()});
        }
    }
    int passed = 0;
    std::string failing;
    for (const CheckResult& r : results) {
        out << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
        if (r.pass) {
            ++passed;
        } else {
            failing += (failing.empty() ? "" : ", ") + r.name;
        }
    }
    out << "verify: " << passed << "/" << results.size() << " passed\n";
    if (!failing.empty()) {
        err << "failing identities: " << failing << '\n';
        return 1;
    }
    return 0;
}

struct DensityFlags {
    std::vector<std::string> x;
    double x_min = 0.1;
    double x_max = 10.0;
    int points = 11;
};

int cmd_density(const JobFlags& jf, const DensityFlags& f, std::ostream& out) {
    const JobSpec job = jf.resolve();
    const TransformedVariable var = make_transformed(job.distribution(), job.transform_spec());
    std::vector<double> xs;
    if (!f.x.empty()) {
        for (const std::string& s : f.x) xs.push_back(parse_real(s));
    } else {
        if (f.points < 1) throw ParameterError("--points must be >= 1");
        if (!(f.x_min > 0.0) || !(f.x_max >= f.x_min)) throw DomainError("density: need 0 < x-min <= x-max");
        for (int i = 0; i < f.points; ++i) {
            const double t = f.points == 1 ? 0.0 : static_cast<double>(i) / (f.points - 1);
            xs.push_back(f.x_min * std::pow(f.x_max / f.x_min, t));
        }
    }
    for (double x : xs) {
        if (!(x > 0.0)) throw DomainError("density: x must be > 0, got " + format15(x));
    }
    std::ostringstream table;
    table << "x\tdensity\tlog_density\n";
    for (double x : xs) {
        const double lg = transformed_log_density(var, x);
        char line[128];
        std::snprintf(line, sizeof line, "%.12g\t%.12g\t%.12g\n", x, std::exp(lg), lg);
        table << line;
    }
    out << table.str();
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moment determinacy of powers and products of nonnegative random variables", "momdet"};
    app.require_subcommand(1);

    JobFlags analyze_flags;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "decide M-det / M-indet for one distribution and transform");
    analyze_flags.attach(analyze_cmd, true);

    TableFlags table_flags;
    CLI::App* table_cmd = app.add_subcommand("table", "verdict matrix over a parameter grid and n = 1..n_max");
    table_cmd->add_option("--family", table_flags.family, "distribution family")->capture_default_str();
    table_cmd->add_option("--alpha", table_flags.alpha, "comma-separated alpha grid")->delimiter(',')->capture_default_str();
    table_cmd->add_option("--beta", table_flags.beta, "comma-separated beta grid")->delimiter(',')->capture_default_str();
    table_cmd->add_option("--gamma", table_flags.gamma, "comma-separated gamma grid")->delimiter(',')->capture_default_str();
    table_cmd->add_option("--lambda", table_flags.lambda, "comma-separated lambda grid")->delimiter(',')->capture_default_str();
    table_cmd->add_option("--transform", table_flags.transform, "power | product | both")
        ->check(CLI::IsMember({"power", "product", "both"}))
        ->capture_default_str();
    table_cmd->add_option("--n-max", table_flags.n_max, "largest n")->capture_default_str();
    table_cmd->add_option("--workers", table_flags.workers, "worker threads (0: hardware concurrency)");
    table_cmd->add_option("--output", table_flags.output, "text | json")->check(CLI::IsMember({"text", "json"}));
    table_cmd->add_option("--json-out", table_flags.json_out, "also write the JSON twin to this file");

    VerifyFlags verify_flags;
    CLI::App* verify_cmd = app.add_subcommand("verify", "oracle cross-checks with a pass/fail scoreboard");
    verify_cmd->add_option("--only", verify_flags.only, "restrict to these checks")
        ->delimiter(',')
        ->check(CLI::IsMember({"lemma1-convolution", "k0-mellin", "eq1", "quad-closed", "mc-quad"}));
    verify_cmd->add_option("--mc-samples", verify_flags.mc_samples, "Monte-Carlo samples per fixture")->capture_default_str();
    verify_flags.o_seed = verify_cmd->add_option("--seed", verify_flags.seed, "root seed")->capture_default_str();
    verify_cmd->add_option("--workers", verify_flags.workers, "Monte-Carlo worker threads (0: hardware concurrency)");

    JobFlags density_job;
    DensityFlags density_flags;
    CLI::App* density_cmd = app.add_subcommand("density", "tab-separated density of the transformed variable");
    density_job.attach(density_cmd, false);
    density_cmd->add_option("--x", density_flags.x, "comma-separated evaluation points")->delimiter(',');
    density_cmd->add_option("--x-min", density_flags.x_min, "lower end of the log grid")->capture_default_str();
    density_cmd->add_option("--x-max", density_flags.x_max, "upper end of the log grid")->capture_default_str();
    density_cmd->add_option("--points", density_flags.points, "log grid size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(analyze_flags, out);
        if (*table_cmd) return cmd_table(table_flags, out);
        if (*verify_cmd) return cmd_verify(verify_flags, out, err);
        if (*density_cmd) return cmd_density(density_job, density_flags, out);
    } catch (const JobError& e) {
        err << "error: invalid job at " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace momdet
