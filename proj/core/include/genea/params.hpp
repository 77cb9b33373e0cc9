#pragma once

#include <stdexcept>

namespace genea {

// Parameters of the quadratic branching mechanism psi(l) = beta*l^2 + 2*beta*theta*l.
// beta is a time-scale parameter (1/time), theta a population-size parameter (1/size).
// theta = 0 (critical case) is accepted for plain evaluation only; every sampler and
// every moment formula requires theta > 0, where the stationary population is finite.
struct BranchingParams {
    double beta = 1.0;
    double theta = 1.0;
};

inline void check_params(const BranchingParams& p) {
    if (!(p.beta > 0.0))
        throw std::invalid_argument("BranchingParams: beta must be > 0");
    if (!(p.theta >= 0.0))
        throw std::invalid_argument("BranchingParams: theta must be >= 0");
}

inline void check_sampling_params(const BranchingParams& p) {
    check_params(p);
    if (!(p.theta > 0.0))
        throw std::invalid_argument(
            "BranchingParams: theta must be > 0 (population size is a.s. infinite at theta = 0)");
}

} // namespace genea
