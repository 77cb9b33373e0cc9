#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genea/params.hpp"
#include "genea/rng.hpp"
#include "genea/samplers.hpp"

namespace genea {

// One replicate of a length functional together with the compensation that makes
// the sequence converge: compensated = raw - compensator exactly.
struct LengthSummary {
    double raw = 0.0;
    double compensator = 0.0;
    double compensated = 0.0;
    double z0 = 0.0;
    double n_or_eps = 0.0;
};

// E[L_eps | Z_0 = z0] = z0 * int_eps^inf c(h) dh = -(z0/beta) log(1 - exp(-2*beta*theta*eps)).
double compensator_L_eps(const BranchingParams& p, double z0, double eps);

// Exact conditional mean of the n-sample tree length given the frame: the sum of
// mean_zeta_star over the frame's interval lengths.
double compensator_lambda_exact(const BranchingParams& p, const SampleFrame& frame);

// Leading-order mean (z0/beta) * log(n / (2*theta*z0)).
double compensator_lambda_asymptotic(const BranchingParams& p, double z0, std::size_t n);

// Limit Laplace transform of the compensated length: exp(theta*z0*phi(lambda/(2*beta*theta))).
// The exponent is nonnegative, so values >= 1 are expected (the compensated limit
// takes negative values); returned unclamped.
double laplace_limit_target(const BranchingParams& p, double z0, double lambda);

struct McEstimate {
    double estimate = 0.0;
    double se = 0.0;
    std::size_t reps = 0;
};

// Monte Carlo mean of exp(-lambda * (L_eps - compensator)) over replicates of the
// depth-truncated ancestral process with total population fixed at z0. All lambdas
// share the same replicates.
std::vector<McEstimate> estimate_laplace_mc(const BranchingParams& p, double z0,
                                            const std::vector<double>& lambdas, double eps,
                                            std::size_t reps, std::uint64_t seed,
                                            std::uint64_t stream_base, unsigned threads);
McEstimate estimate_laplace_mc(const BranchingParams& p, double z0, double lambda, double eps,
                               std::size_t reps, std::uint64_t seed, std::uint64_t stream_base,
                               unsigned threads);

struct CoupledLengths {
    double lambda_n = 0.0; // n-sample tree length from per-gap maxima
    double l_eps = 0.0;    // truncated length of the same process
    double eps = 0.0;      // truncation depth z0/(n*beta)
};

// One replicate of the coupling between the n-sample length and the truncated
// length, built from one ancestral process: per-gap maxima over the order-statistic
// gaps of {0, X_1..X_n}. Gaps with no atom above eps draw their maximum from the
// zeta* law conditioned to at most eps, which reproduces the untruncated maximum
// exactly in law.
CoupledLengths coupled_lengths(const BranchingParams& p, double z0, std::size_t n,
                               RngStream& rng);
double coupled_difference(const BranchingParams& p, double z0, std::size_t n, RngStream& rng);

// CSV emission: header "replicate,z0,n_or_eps,raw,compensator,compensated".
std::string length_summary_csv_header();
std::string length_summary_csv_row(std::size_t replicate, const LengthSummary& s);

} // namespace genea
