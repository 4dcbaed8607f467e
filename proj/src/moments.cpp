#include "momdet/moments.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "momdet/errors.hpp"

namespace momdet {

const char* to_string(MomentSource s) {
    switch (s) {
        case MomentSource::closed_form: return "closed_form";
        case MomentSource::quadrature: return "quadrature";
        case MomentSource::composed: return "composed";
    }
    return "?";
}

MomentSequence::MomentSequence(LogMomentFn log_m, bool exact, MomentSource source, std::string label,
                               std::optional<ExactRate> rate)
    : log_m_(std::move(log_m)), exact_(exact), source_(source), label_(std::move(label)), rate_(std::move(rate)) {}

double MomentSequence::log_m(int k) const {
    if (k < 0) throw ParameterError("moment index must be nonnegative");
    if (k == 0) return 0.0;
    const auto idx = static_cast<std::size_t>(k);
    {
        std::lock_guard lock(cache_->mu);
        if (idx < cache_->values.size() && cache_->values[idx]) return *cache_->values[idx];
    }
    const double v = log_m_(k);
    if (!std::isfinite(v)) {
        throw NumericError(label_ + ": log-moment of order " + std::to_string(k) + " is not finite");
    }
    std::lock_guard lock(cache_->mu);
    if (cache_->values.size() <= idx) cache_->values.resize(idx + 1);
    cache_->values[idx] = v;
    return v;
}

std::vector<double> MomentSequence::table(int k_max) const {
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) out[static_cast<std::size_t>(k)] = log_m(k);
    return out;
}

}  // namespace momdet
