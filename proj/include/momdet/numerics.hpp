#pragma once

#include <cstdint>

namespace momdet {

struct NumericsConfig {
    int k_max = 60;
    int rate_lo = 20;
    int rate_hi = 60;
    double quad_tol = 1e-8;
    double rho_band = 0.02;
    double tau_band = 0.05;
    double krein_xmax = 1e4;
    std::int64_t mc_samples = 1000000;
    std::uint64_t seed = 20130101;
    double cond2_bound = 50.0;

    // Throws ParameterError when a field is non-positive or the window leaves [1, k_max].
    void validate() const;
    friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

}  // namespace momdet
