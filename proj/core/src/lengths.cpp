#include "genea/lengths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "genea/distributions.hpp"
#include "genea/parallel.hpp"

namespace genea {

double compensator_L_eps(const BranchingParams& p, double z0, double eps) {
    check_sampling_params(p);
    if (!(z0 > 0.0)) throw std::invalid_argument("compensator_L_eps: z0 must be > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("compensator_L_eps: eps must be > 0");
    return -(z0 / p.beta) * std::log(-std::expm1(-2.0 * p.beta * p.theta * eps));
}

double compensator_lambda_exact(const BranchingParams& p, const SampleFrame& frame) {
    check_sampling_params(p);
    const auto lengths = static_interval_lengths(frame);
    std::vector<double> means;
    means.reserve(lengths.size());
    for (double d : lengths) means.push_back(mean_zeta_star(p, d));
    return sum_ordered(means);
}

double compensator_lambda_asymptotic(const BranchingParams& p, double z0, std::size_t n) {
    check_sampling_params(p);
    if (!(z0 > 0.0))
        throw std::invalid_argument("compensator_lambda_asymptotic: z0 must be > 0");
    if (n == 0) throw std::invalid_argument("compensator_lambda_asymptotic: n must be >= 1");
    return (z0 / p.beta) * std::log(static_cast<double>(n) / (2.0 * p.theta * z0));
}

double laplace_limit_target(const BranchingParams& p, double z0, double lambda) {
    check_sampling_params(p);
    if (!(z0 > 0.0)) throw std::invalid_argument("laplace_limit_target: z0 must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("laplace_limit_target: lambda must be > 0");
    return std::exp(p.theta * z0 * phi(lambda / (2.0 * p.beta * p.theta)));
}

std::vector<McEstimate> estimate_laplace_mc(const BranchingParams& p, double z0,
                                            const std::vector<double>& lambdas, double eps,
                                            std::size_t reps, std::uint64_t seed,
                                            std::uint64_t stream_base, unsigned threads) {
    check_sampling_params(p);
    if (!(z0 > 0.0) || !(eps > 0.0) || lambdas.empty() || reps == 0)
        throw std::invalid_argument("estimate_laplace_mc: bad arguments");
    const double c_eps = c_theta(p, eps);
    const double comp = compensator_L_eps(p, z0, eps);
    const std::size_t nl = lambdas.size();
    // positions never enter L_eps, so only the atom count and depths are sampled
    auto one = [&](std::size_t, RngStream& rng) {
        const std::uint64_t n_atoms = rng.poisson(z0 * c_eps);
        double l_eps = 0.0;
        for (std::uint64_t i = 0; i < n_atoms; ++i)
            l_eps += c_theta_inv(p, rng.uniform01() * c_eps) - eps;
        const double compensated = l_eps - comp;
        std::vector<double> vals(nl);
        for (std::size_t j = 0; j < nl; ++j) vals[j] = std::exp(-lambdas[j] * compensated);
        return vals;
    };
    const auto rows = run_replicates(seed, stream_base, reps, threads, one);
    std::vector<McEstimate> out(nl);
    std::vector<double> col(reps);
    for (std::size_t j = 0; j < nl; ++j) {
        for (std::size_t r = 0; r < reps; ++r) col[r] = rows[r][j];
        const Moments m = moments_of(col);
        out[j] = {m.mean, m.se, reps};
    }
    return out;
}

McEstimate estimate_laplace_mc(const BranchingParams& p, double z0, double lambda, double eps,
                               std::size_t reps, std::uint64_t seed, std::uint64_t stream_base,
                               unsigned threads) {
    return estimate_laplace_mc(p, z0, std::vector<double>{lambda}, eps, reps, seed, stream_base,
                               threads)[0];
}

CoupledLengths coupled_lengths(const BranchingParams& p, double z0, std::size_t n,
                               RngStream& rng) {
    check_sampling_params(p);
    if (!(z0 > 0.0)) throw std::invalid_argument("coupled_lengths: z0 must be > 0");
    if (n == 0) throw std::invalid_argument("coupled_lengths: n must be >= 1");
    const double eps = z0 / (static_cast<double>(n) * p.beta);
    AncestralProcess ap;
    sample_full_ancestral_given(p, eps, 0.5 * z0, 0.5 * z0, rng, ap);

    std::vector<double> pts;
    pts.reserve(n + 1);
    pts.push_back(0.0);
    std::uint64_t resamples = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            const double x = rng.uniform(-0.5 * z0, 0.5 * z0);
            if (x != 0.0) {
                pts.push_back(x);
                break;
            }
            ++resamples;
        }
    }
    std::sort(pts.begin(), pts.end());

    double lambda_n = 0.0, kahan_c = 0.0;
    auto add = [&](double v) {
        const double y = v - kahan_c;
        const double t = lambda_n + y;
        kahan_c = (t - lambda_n) - y;
        lambda_n = t;
    };
    std::size_t a = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double lo = pts[k], hi = pts[k + 1];
        while (a < ap.atoms.size() && ap.atoms[a].u <= lo) ++a;
        double gap_max = 0.0;
        while (a < ap.atoms.size() && ap.atoms[a].u < hi) {
            gap_max = std::max(gap_max, ap.atoms[a].zeta);
            ++a;
        }
        if (gap_max == 0.0)
            gap_max = sample_zeta_star_conditioned(p, hi - lo, eps, rng);
        add(gap_max);
    }
    double l_eps = 0.0, kc2 = 0.0;
    for (const Atom& atom : ap.atoms) {
        const double y = (atom.zeta - eps) - kc2;
        const double t = l_eps + y;
        kc2 = (t - l_eps) - y;
        l_eps = t;
    }
    return {lambda_n, l_eps, eps};
}

double coupled_difference(const BranchingParams& p, double z0, std::size_t n, RngStream& rng) {
    const CoupledLengths c = coupled_lengths(p, z0, n, rng);
    return c.lambda_n - c.l_eps;
}

std::string length_summary_csv_header() {
    return "replicate,z0,n_or_eps,raw,compensator,compensated\n";
}

std::string length_summary_csv_row(std::size_t replicate, const LengthSummary& s) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", replicate, s.z0,
                  s.n_or_eps, s.raw, s.compensator, s.compensated);
    return buf;
}

} // namespace genea
