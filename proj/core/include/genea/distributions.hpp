#pragma once

#include "genea/params.hpp"
#include "genea/rng.hpp"

namespace genea {

// Euler-Mascheroni constant, 16 significant digits.
inline constexpr double kEulerGamma = 0.5772156649015329;

// Branching mechanism psi(lambda) = beta*lambda^2 + 2*beta*theta*lambda.
double psi(const BranchingParams& p, double lambda);

// Tail function of the subtree-depth intensity:
//   c(h) = 1/(beta*h)                     for theta = 0,
//   c(h) = 2*theta / (exp(2*beta*theta*h) - 1)  for theta > 0.
// Strictly decreasing, c(0+) = +inf, c(inf) = 0.
double c_theta(const BranchingParams& p, double h);

// |c'(h)| = 4*beta*theta^2 * exp(2*beta*theta*h) / (exp(2*beta*theta*h) - 1)^2.
// Requires theta > 0 (used only as the depth intensity density of the sampled
// ancestral point process).
double c_theta_prime_abs(const BranchingParams& p, double h);

// Inverse of c_theta: h = log(1 + 2*theta/y) / (2*beta*theta). Requires theta > 0.
double c_theta_inv(const BranchingParams& p, double y);

// Quantile function of the maximal subtree depth over a local-time interval of
// length delta, whose CDF is P(zeta* < h) = exp(-delta * c(h)):
//   zeta*(u) = log(1 - 2*theta*delta/log(u)) / (2*theta*beta), u in (0,1).
double zeta_star_quantile(const BranchingParams& p, double delta, double u);

// Quantile of zeta* conditioned to be at most hmax, CDF exp(-delta*(c(v) - c(hmax)))
// on (0, hmax]: c_inv(c(hmax) - log(u)/delta).
double zeta_star_conditioned_quantile(const BranchingParams& p, double delta, double hmax,
                                      double u);

// One draw of zeta* by inverse transform on a (0,1) uniform.
double sample_zeta_star(const BranchingParams& p, double delta, RngStream& rng);

// One draw of zeta* conditioned to at most hmax; output <= hmax always.
double sample_zeta_star_conditioned(const BranchingParams& p, double delta, double hmax,
                                    RngStream& rng);

// E[zeta*_delta] = int_0^inf (1 - exp(-delta*c(h))) dh by adaptive quadrature,
// absolute tolerance 1e-9. The substitution v = exp(-2*beta*theta*h) maps the
// integral to (0,1) with a bounded integrand.
double mean_zeta_star(const BranchingParams& p, double delta);

// E[(zeta*_delta)^2] = 2 int_0^inf h (1 - exp(-delta*c(h))) dh, same scheme.
double second_moment_zeta_star(const BranchingParams& p, double delta);

// int_0^inf h c(h) dh, computed as (1/(2*beta^2*theta)) int_0^1 -log(1-t)/t dt.
// Equals pi^2 / (12*beta^2*theta).
double integral_h_c(const BranchingParams& p);

// phi(lambda) = lambda * int_0^1 (1 - v^lambda) / (1 - v) dv (integrand extended
// continuously by lambda at v = 1). Equals lambda * H_lambda at integer arguments.
double phi(double lambda);

} // namespace genea
