#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "momdet/distributions.hpp"
#include "momdet/quadrature.hpp"
#include "momdet/transforms.hpp"

namespace momdet {

// E[X^s] = int_0^inf x^s f(x) dx by adaptive quadrature on [0, X*], where X* is the first
// doubling of 1 with tail_bound(X*) < tol/2 * max(1, value). [0, 1] is mapped by x = u^4 so
// integrable singularities at 0 are smoothed out. `tol` is relative to max(1, value);
// NumericError when est_error + tail_bound does not meet it.
QuadResult quad_moment(const std::function<double(double)>& density,
                       const std::function<double(double)>& tail_bound, double s, double tol);

// Catalog form: the density and the analytic tail majorant of the law.
QuadResult quad_moment(const DistributionSpec& spec, double s, double tol);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

// Monte-Carlo estimate of E[T^s] for the transformed variable T; products are literal
// products of n independent draws. Samples are split into fixed shards seeded by
// derive_seed(seed, shard); shards are reduced in index order, so the result does not
// depend on `workers`.
McEstimate mc_moment(const DistributionSpec& spec, TransformSpec t, double s, std::int64_t n_samples,
                     std::uint64_t seed, int workers = 1);

}  // namespace momdet

namespace momdet {

// One line of the verification scoreboard.
struct CheckResult {
    std::string name;
    bool pass = false;
    double max_rel_err = 0.0;  // |z| for the Monte-Carlo check
    std::string detail;        // metric and worst fixture
};

// g2 closed form vs numerical Mellin self-convolution, GG(1,1,1) and GG(1/2,2,1),
// 101 log-spaced points on [0.1, 20]; pass below 1e-5.
CheckResult check_lemma1_convolution();

// int_0^inf x^s K0(x) dx vs 2^(s-1) Gamma((s+1)/2)^2 for the given s; pass below 1e-6.
CheckResult check_k0_mellin(const std::vector<double>& s_values = {0.5, 1.0, 2.0, 3.0});

// ln E[xi^(nk)] >= n ln E[xi^k] for every catalog fixture, n <= n_max, k <= k_max; exact for
// closed-form families, slack 1e-9 (relative) for quadrature families.
CheckResult check_eq1(int n_max = 5, int k_max = 40);

// quad_moment vs closed form for GG, LogNormal01 and HalfBessel fixtures, s in {0.5,1,2,3,5}.
CheckResult check_quad_closed(double tol = 1e-6);

// mc_moment within 3 standard errors of the quadrature value on twelve fixtures, and the
// Monte-Carlo power moment >= product moment less 3 joint standard errors.
std::vector<CheckResult> check_mc_quad(std::int64_t samples, std::uint64_t seed, int workers = 1);

}  // namespace momdet
