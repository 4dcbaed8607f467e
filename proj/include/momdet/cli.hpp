#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "momdet/criteria.hpp"
#include "momdet/numerics.hpp"
#include "momdet/transforms.hpp"

namespace momdet {

// A job as read from a config file and overridden by flags. Parameters stay optional until
// build() so flags can fill in what the file leaves out.
struct JobSpec {
    std::string family = "gg";
    std::optional<double> alpha, beta, gamma, lambda;
    std::string transform = "identity";
    int n = 1;
    std::optional<std::vector<Criterion>> criteria;  // nullopt: auto
    NumericsConfig numerics;
    std::string output = "text";

    DistributionSpec distribution() const;
    TransformSpec transform_spec() const;
};

// Thrown for a malformed job document; pointer is the JSON pointer of the offending key.
class JobError : public std::invalid_argument {
public:
    JobError(const std::string& pointer, const std::string& what)
        : std::invalid_argument(pointer + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

// Reads a job document on top of `base`; unknown keys are rejected.
JobSpec parse_job(const nlohmann::json& doc, JobSpec base = {});

// Exit codes: 0 success, 1 error or disagreement with ground truth, 2 inconclusive.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace momdet
