#include "genea/distributions.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace genea {

namespace {

// Adaptive quadrature over (0,1). Throws if the error estimate exceeds abs_tol.
template <class F>
double integrate01(F f, double abs_tol) {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    double value;
    try {
        value = integrator.integrate(f, 0.0, 1.0, 1e-12, &error, &l1);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("quadrature failed: ") + e.what());
    }
    if (!(error <= abs_tol) || !std::isfinite(value))
        throw std::runtime_error("quadrature did not converge to requested tolerance");
    return value;
}

} // namespace

double psi(const BranchingParams& p, double lambda) {
    check_params(p);
    if (!(lambda >= 0.0)) throw std::invalid_argument("psi: lambda must be >= 0");
    return p.beta * lambda * lambda + 2.0 * p.beta * p.theta * lambda;
}

double c_theta(const BranchingParams& p, double h) {
    check_params(p);
    if (!(h > 0.0)) throw std::invalid_argument("c_theta: h must be > 0");
    if (p.theta == 0.0) return 1.0 / (p.beta * h);
    return 2.0 * p.theta / std::expm1(2.0 * p.beta * p.theta * h);
}

double c_theta_prime_abs(const BranchingParams& p, double h) {
    check_sampling_params(p);
    if (!(h > 0.0)) throw std::invalid_argument("c_theta_prime_abs: h must be > 0");
    const double x = 2.0 * p.beta * p.theta * h;
    const double em1 = std::expm1(x);
    return 4.0 * p.beta * p.theta * p.theta * std::exp(x) / (em1 * em1);
}

double c_theta_inv(const BranchingParams& p, double y) {
    check_sampling_params(p);
    if (!(y > 0.0)) throw std::invalid_argument("c_theta_inv: y must be > 0");
    return std::log1p(2.0 * p.theta / y) / (2.0 * p.beta * p.theta);
}

double zeta_star_quantile(const BranchingParams& p, double delta, double u) {
    check_sampling_params(p);
    if (!(delta > 0.0)) throw std::invalid_argument("zeta_star_quantile: delta must be > 0");
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("zeta_star_quantile: u must be in (0,1)");
    return std::log1p(-2.0 * p.theta * delta / std::log(u)) / (2.0 * p.theta * p.beta);
}

double zeta_star_conditioned_quantile(const BranchingParams& p, double delta, double hmax,
                                      double u) {
    check_sampling_params(p);
    if (!(delta > 0.0))
        throw std::invalid_argument("zeta_star_conditioned_quantile: delta must be > 0");
    if (!(hmax > 0.0))
        throw std::invalid_argument("zeta_star_conditioned_quantile: hmax must be > 0");
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("zeta_star_conditioned_quantile: u must be in (0,1)");
    const double y = c_theta(p, hmax) - std::log(u) / delta;
    const double h = c_theta_inv(p, y);
    return h < hmax ? h : hmax;
}

double sample_zeta_star(const BranchingParams& p, double delta, RngStream& rng) {
    return zeta_star_quantile(p, delta, rng.uniform01());
}

double sample_zeta_star_conditioned(const BranchingParams& p, double delta, double hmax,
                                    RngStream& rng) {
    return zeta_star_conditioned_quantile(p, delta, hmax, rng.uniform01());
}

double mean_zeta_star(const BranchingParams& p, double delta) {
    check_sampling_params(p);
    if (!(delta > 0.0)) throw std::invalid_argument("mean_zeta_star: delta must be > 0");
    const double a = 2.0 * p.theta * delta;
    const double scale = 2.0 * p.beta * p.theta;
    auto f = [a](double v) {
        const double one_minus_v = 1.0 - v;
        if (one_minus_v <= 0.0) return 1.0 / v;
        return -std::expm1(-a * v / one_minus_v) / v;
    };
    return integrate01(f, 1e-9 * scale) / scale;
}

double second_moment_zeta_star(const BranchingParams& p, double delta) {
    check_sampling_params(p);
    if (!(delta > 0.0))
        throw std::invalid_argument("second_moment_zeta_star: delta must be > 0");
    const double a = 2.0 * p.theta * delta;
    const double scale = 2.0 * p.beta * p.beta * p.theta * p.theta;
    auto f = [a](double v) {
        const double one_minus_v = 1.0 - v;
        const double tail = (one_minus_v <= 0.0) ? 1.0 : -std::expm1(-a * v / one_minus_v);
        return -std::log(v) * tail / v;
    };
    return integrate01(f, 1e-9 * scale) / scale;
}

double integral_h_c(const BranchingParams& p) {
    check_sampling_params(p);
    const double scale = 2.0 * p.beta * p.beta * p.theta;
    auto f = [](double t) { return -std::log1p(-t) / t; };
    return integrate01(f, 1e-9 * scale) / scale;
}

double phi(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("phi: lambda must be > 0");
    auto f = [lambda](double v) {
        if (v < 0.5) return -std::expm1(lambda * std::log(v)) / (1.0 - v);
        const double u = 1.0 - v;
        if (u < 1e-4) {
            // Taylor of (1 - (1-u)^lambda)/u around u = 0
            const double c2 = (lambda - 1.0) / 2.0;
            const double c3 = (lambda - 1.0) * (lambda - 2.0) / 6.0;
            return lambda * (1.0 - c2 * u + c3 * u * u);
        }
        return -std::expm1(lambda * std::log1p(-u)) / u;
    };
    const double tol = 1e-9 / std::max(1.0, lambda);
    return lambda * integrate01(f, tol);
}

} // namespace genea
