#include "genea/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "genea/distributions.hpp"
#include "genea/parallel.hpp"
#include "genea/samplers.hpp"

namespace genea {

TestVerdict make_verdict(std::string name, double statistic, double threshold,
                         std::size_t n_samples, std::string details) {
    TestVerdict v;
    v.name = std::move(name);
    v.statistic = statistic;
    v.threshold = threshold;
    v.n_samples = n_samples;
    v.pass = statistic <= threshold;
    v.details = std::move(details);
    return v;
}

double ks_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ks_critical: alpha must be in (0,1)");
    return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

TestVerdict ks_one_sample(std::string name, std::vector<double> samples,
                          const std::function<double(double)>& cdf, double alpha) {
    const std::size_t n = samples.size();
    if (n < 100) throw std::invalid_argument("ks_one_sample: need at least 100 samples");
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(samples[i]);
        if (!(f >= -1e-12 && f <= 1.0 + 1e-12))
            throw std::invalid_argument("ks_one_sample: cdf value outside [0,1]");
        const double lo = static_cast<double>(i) / static_cast<double>(n);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        d = std::max({d, f - lo, hi - f});
    }
    return make_verdict(std::move(name), d, ks_critical(alpha) / std::sqrt(static_cast<double>(n)),
                        n);
}

TestVerdict ks_two_sample(std::string name, std::vector<double> a, std::vector<double> b,
                          double alpha) {
    const std::size_t m = a.size(), n = b.size();
    if (m == 0 || n == 0) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < m && j < n) {
        const double x = std::min(a[i], b[j]);
        while (i < m && a[i] == x) ++i;
        while (j < n && b[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / static_cast<double>(m) -
                                  static_cast<double>(j) / static_cast<double>(n)));
    }
    const double thr = ks_critical(alpha) *
                       std::sqrt(static_cast<double>(m + n) / (static_cast<double>(m) *
                                                               static_cast<double>(n)));
    return make_verdict(std::move(name), d, thr, m + n);
}

TestVerdict moment_test(std::string name, const std::vector<double>& samples, double target,
                        double k_sigma) {
    if (samples.size() < 2) throw std::invalid_argument("moment_test: need at least 2 samples");
    const Moments m = moments_of(samples);
    return make_verdict(std::move(name), std::fabs(m.mean - target), k_sigma * m.se, m.n,
                        "mean=" + std::to_string(m.mean) + " target=" + std::to_string(target));
}

TestVerdict variance_test(std::string name, const std::vector<double>& samples, double target,
                          double k_sigma) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("variance_test: need at least 2 samples");
    const Moments m = moments_of(samples);
    double m4 = 0.0;
    for (double x : samples) {
        const double d = x - m.mean;
        m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(n);
    const double var = m.sd * m.sd;
    const double se = std::sqrt(std::max(m4 - var * var, 0.0) / static_cast<double>(n));
    return make_verdict(std::move(name), std::fabs(var - target), k_sigma * se, n,
                        "var=" + std::to_string(var) + " target=" + std::to_string(target));
}

TestVerdict correlation_test(std::string name, const std::vector<double>& x,
                             const std::vector<double>& y, double k_sigma) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw std::invalid_argument("correlation_test: need two equal samples of size >= 2");
    const Moments mx = moments_of(x), my = moments_of(y);
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += (x[i] - mx.mean) * (y[i] - my.mean);
    const double denom = mx.sd * my.sd * static_cast<double>(n - 1);
    const double r = denom > 0.0 ? sxy / denom : 0.0;
    return make_verdict(std::move(name), std::fabs(r), k_sigma / std::sqrt(static_cast<double>(n)),
                        n);
}

std::vector<TestVerdict> eex_pit_test(const BranchingParams& p, std::size_t reps,
                                      double eps_trunc, std::uint64_t seed,
                                      std::uint64_t stream_base, unsigned threads) {
    check_sampling_params(p);
    if (reps < 1000) throw std::invalid_argument("eex_pit_test: need at least 1000 replicates");
    struct Rep {
        double e_g = 0, e_d = 0, zmax = 0, x = 0;
        bool has_atom = false;
    };
    auto one = [&](std::size_t, RngStream& rng) {
        thread_local AncestralProcess scratch;
        const auto [e_g, e_d] = sample_boundaries(p, rng);
        sample_full_ancestral_given(p, eps_trunc, e_g, e_d, rng, scratch);
        Rep r;
        r.e_g = e_g;
        r.e_d = e_d;
        r.has_atom = !scratch.atoms.empty();
        for (const Atom& a : scratch.atoms) {
            if (a.zeta > r.zmax) {
                r.zmax = a.zeta;
                r.x = a.u;
            }
        }
        return r;
    };
    const auto rows = run_replicates(seed, stream_base, reps, threads, one);

    std::size_t dropped = 0;
    std::vector<double> t1, t2, t3, sign;
    t1.reserve(reps);
    t2.reserve(reps);
    t3.reserve(reps);
    sign.reserve(reps);
    for (const Rep& r : rows) {
        if (!r.has_atom) {
            ++dropped;
            continue;
        }
        // gaps on each side of the deepest atom: (-e_g to x^-, |x|, x^+ to e_d)
        const double rate = 2.0 * p.theta + c_theta(p, r.zmax);
        t1.push_back(-std::expm1(-rate * (r.e_g + std::min(r.x, 0.0))));
        t2.push_back(-std::expm1(-rate * std::fabs(r.x)));
        t3.push_back(-std::expm1(-rate * (r.e_d - std::max(r.x, 0.0))));
        sign.push_back(r.x >= 0.0 ? 1.0 : 0.0);
    }
    if (static_cast<double>(dropped) > 1e-3 * static_cast<double>(reps))
        throw std::runtime_error("eex_pit_test: truncation dropped more than 0.1% of replicates; "
                                 "lower eps_trunc");

    auto uniform_cdf = [](double u) { return std::clamp(u, 0.0, 1.0); };
    std::vector<TestVerdict> out;
    const std::string note = "dropped=" + std::to_string(dropped);
    out.push_back(ks_one_sample("eex-pit-ks-left-mass", t1, uniform_cdf, 0.01));
    out.back().details = note;
    out.push_back(ks_one_sample("eex-pit-ks-abs-position", t2, uniform_cdf, 0.01));
    out.push_back(ks_one_sample("eex-pit-ks-right-mass", t3, uniform_cdf, 0.01));
    out.push_back(moment_test("eex-sign-bernoulli", sign, 0.5));
    out.push_back(correlation_test("eex-corr-12", t1, t2));
    out.push_back(correlation_test("eex-corr-13", t1, t3));
    out.push_back(correlation_test("eex-corr-23", t2, t3));
    return out;
}

} // namespace genea
