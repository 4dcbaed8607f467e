#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "momdet/rational.hpp"

namespace momdet {

enum class MomentSource { closed_form, quadrature, composed };

const char* to_string(MomentSource s);

// Growth of m_{k+1}/m_k ~ C (k+1)^rho known analytically for the sequence.
struct ExactRate {
    double rho = 0.0;
    double log_c = 0.0;
    std::optional<Rational> rho_rational;
    bool superpolynomial = false;  // ratio grows faster than any power of k
    std::string basis;             // where the exponent comes from
};

// Lazy provider of log-moments ln m_k = ln E[X^k], with ln m_0 = 0. Values are memoized;
// copies share the cache, which is guarded for concurrent readers.
class MomentSequence {
public:
    using LogMomentFn = std::function<double(int)>;

    MomentSequence(LogMomentFn log_m, bool exact, MomentSource source, std::string label,
                   std::optional<ExactRate> rate = std::nullopt);

    double log_m(int k) const;

    // ln m_0 .. ln m_{k_max}
    std::vector<double> table(int k_max) const;

    bool exact() const { return exact_; }
    MomentSource source() const { return source_; }
    const std::string& label() const { return label_; }
    const std::optional<ExactRate>& exact_rate() const { return rate_; }

private:
    LogMomentFn log_m_;
    bool exact_;
    MomentSource source_;
    std::string label_;
    std::optional<ExactRate> rate_;

    struct Cache {
        std::mutex mu;
        std::vector<std::optional<double>> values;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace momdet
