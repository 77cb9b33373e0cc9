#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "genea/ancestral_process.hpp"
#include "genea/params.hpp"
#include "genea/rng.hpp"

namespace genea {

// Sampling frame shared by the tree samplers: support boundaries and the sampled
// individual positions X_1..X_n (draw order), with X_0 = 0 implicit. Positions
// are distinct and nonzero; exact collisions and zero draws are resampled and
// counted in resample_count.
struct SampleFrame {
    double e_g = 0.0;
    double e_d = 0.0;
    std::vector<double> xs;
    std::uint64_t resample_count = 0;

    double z0() const { return e_g + e_d; }
};

// The interval each sampled position spans toward its neighbor on the origin
// side, within {-e_g, e_d, 0, X_1..X_n}: [prev, X_k] for X_k > 0, [X_k, next]
// for X_k < 0. Returned in draw order.
std::vector<std::pair<double, double>> static_intervals(const SampleFrame& frame);
std::vector<double> static_interval_lengths(const SampleFrame& frame);

// Two independent exponentials with rate 2*theta: population mass left and right
// of the distinguished individual.
std::pair<double, double> sample_boundaries(const BranchingParams& p, RngStream& rng);

// Ancestral point process restricted to depths above eps_trunc: atom count
// Poisson((e_g+e_d)*c(eps)), positions uniform on (-e_g, e_d), depths by tail
// inversion c_inv(U*c(eps)). The unrestricted intensity is infinite near depth 0,
// hence the mandatory truncation.
AncestralProcess sample_full_ancestral(const BranchingParams& p, double eps_trunc,
                                       RngStream& rng);
void sample_full_ancestral_given(const BranchingParams& p, double eps_trunc, double e_g,
                                 double e_d, RngStream& rng, AncestralProcess& out);

struct StaticSample {
    SampleFrame frame;
    AncestralProcess process;
};

// Genealogical tree of n uniform samples from the extant population: one atom per
// sample, depth drawn from the zeta* law at the toward-origin interval length.
StaticSample sample_static(const BranchingParams& p, std::size_t n, RngStream& rng);

// Same tree law conditioned on total population size z0, realized with the
// symmetric split e_g = e_d = z0/2 (the tree law given z0 does not depend on the
// split; see the split-invariance test).
StaticSample sample_static_conditional_z0(const BranchingParams& p, std::size_t n, double z0,
                                          RngStream& rng);

// Static sampler with both boundaries fixed.
StaticSample sample_static_given_boundaries(const BranchingParams& p, std::size_t n, double e_g,
                                            double e_d, RngStream& rng);

struct DynamicStep {
    bool boundary = false;           // near neighbor was a support boundary
    char side = 'g';                 // interval used: 'g' toward the left neighbor
    std::ptrdiff_t kappa = -1;       // draw-order index of the conditioning atom
    double cond_height = std::numeric_limits<double>::infinity();
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    double v = std::numeric_limits<double>::quiet_NaN(); // auxiliary position (position variant)
    double p_d = std::numeric_limits<double>::quiet_NaN(); // coin weight (height variant)
    bool transferred = false;        // height moved from neighbor to new atom (height variant)
};

struct DynamicTrace {
    std::vector<DynamicStep> steps;
};

struct DynamicSample {
    SampleFrame frame;
    std::vector<AncestralProcess> processes; // nested states after steps 1..n
    DynamicTrace trace;
};

// Incremental construction that places each atom at an auxiliary position V_n
// uniform in the chosen interval; every new interior depth is drawn conditioned
// below the height of the unique earlier V inside the straddled gap. Verifies the
// strict interlacing of X- and V-order statistics after every step and throws
// std::logic_error on violation.
DynamicSample sample_dynamic_v(const BranchingParams& p, std::size_t n, RngStream& rng);

// Incremental construction keeping atoms at the sampled positions; an interior
// insertion either draws a fresh height below the adjacent atom's or takes over
// that height and redraws the neighbor's, with odds p_d : p_g given by the two
// gap lengths.
DynamicSample sample_dynamic_h(const BranchingParams& p, std::size_t n, RngStream& rng);

// Tree of n samples conditioned on the population TMRCA equaling h: boundaries
// and the deepest atom's position are assembled from three exponentials with rate
// 2*theta + c(h); the interval containing that position is forced to depth h and
// every other depth is drawn from zeta* conditioned to at most h. tmrca <= h on
// every output.
StaticSample sample_conditional_tmrca(const BranchingParams& p, std::size_t n, double h,
                                      RngStream& rng);

} // namespace genea
