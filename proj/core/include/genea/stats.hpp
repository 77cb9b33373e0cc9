#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "genea/params.hpp"

namespace genea {

// Outcome of one statistical check; pass iff statistic <= threshold.
struct TestVerdict {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    std::size_t n_samples = 0;
    bool pass = false;
    std::string details;
};

TestVerdict make_verdict(std::string name, double statistic, double threshold,
                         std::size_t n_samples, std::string details = {});

// Asymptotic KS critical constant c(alpha) = sqrt(-ln(alpha/2)/2);
// c(0.01) ~= 1.628, c(0.001) ~= 1.950.
double ks_critical(double alpha);

// One-sample Kolmogorov-Smirnov against an analytic CDF. Requires >= 100 samples
// and a CDF monotone on the sample range. Threshold c(alpha)/sqrt(n).
TestVerdict ks_one_sample(std::string name, std::vector<double> samples,
                          const std::function<double(double)>& cdf, double alpha = 0.01);

// Two-sample KS with threshold c(alpha) * sqrt((m+n)/(m*n)).
TestVerdict ks_two_sample(std::string name, std::vector<double> a, std::vector<double> b,
                          double alpha = 0.01);

// |sample mean - target| <= k_sigma * sd/sqrt(n). Requires >= 2 samples.
TestVerdict moment_test(std::string name, const std::vector<double>& samples, double target,
                        double k_sigma = 4.0);

// |sample variance - target| <= k_sigma * se, with se estimated from the fourth
// central moment.
TestVerdict variance_test(std::string name, const std::vector<double>& samples, double target,
                          double k_sigma = 4.0);

// |sample correlation| <= k_sigma / sqrt(n).
TestVerdict correlation_test(std::string name, const std::vector<double>& x,
                             const std::vector<double>& y, double k_sigma = 4.0);

// Probability-integral-transform check of the deepest lineage's geometry: over
// replicates of the depth-truncated ancestral process, the triple
// (e_g + x_-, |x|, e_d - x_+) built from the deepest atom's position x, mapped
// through u = 1 - exp(-(2*theta + c(tmrca)) * value), must be uniform per
// coordinate (three KS tests), the sign of x Bernoulli(1/2) (moment test) and the
// transformed coordinates pairwise uncorrelated. Replicates with no atom above
// eps_trunc are discarded; more than 0.1% of them is an error.
std::vector<TestVerdict> eex_pit_test(const BranchingParams& p, std::size_t reps,
                                      double eps_trunc, std::uint64_t seed,
                                      std::uint64_t stream_base, unsigned threads);

} // namespace genea
