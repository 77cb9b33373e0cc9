#include "genea/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "genea/distributions.hpp"

namespace genea {

namespace {

// Draws one position in (lo, hi), rejecting exact zeros (the spine slot).
double draw_position(RngStream& rng, double lo, double hi, std::uint64_t& resamples) {
    for (;;) {
        const double x = lo + (hi - lo) * rng.uniform01();
        if (x != 0.0 && x > lo && x < hi) return x;
        ++resamples;
    }
}

// Fills frame.xs with n distinct nonzero positions in (-e_g, e_d).
void draw_positions(SampleFrame& frame, std::size_t n, RngStream& rng) {
    frame.xs.clear();
    frame.xs.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        frame.xs.push_back(draw_position(rng, -frame.e_g, frame.e_d, frame.resample_count));
    // exact collisions have probability zero; resample them if they ever occur
    for (;;) {
        std::vector<double> sorted = frame.xs;
        std::sort(sorted.begin(), sorted.end());
        const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup == sorted.end()) return;
        ++frame.resample_count;
        const auto it = std::find(frame.xs.begin(), frame.xs.end(), *dup);
        *it = draw_position(rng, -frame.e_g, frame.e_d, frame.resample_count);
    }
}

void sort_atoms(AncestralProcess& ap) {
    std::sort(ap.atoms.begin(), ap.atoms.end(),
              [](const Atom& a, const Atom& b) { return a.u < b.u; });
}

} // namespace

std::vector<std::pair<double, double>> static_intervals(const SampleFrame& frame) {
    const std::size_t n = frame.xs.size();
    std::vector<double> grid;
    grid.reserve(n + 3);
    grid.push_back(-frame.e_g);
    grid.push_back(0.0);
    grid.push_back(frame.e_d);
    grid.insert(grid.end(), frame.xs.begin(), frame.xs.end());
    std::sort(grid.begin(), grid.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (double x : frame.xs) {
        const auto it = std::lower_bound(grid.begin(), grid.end(), x);
        if (x > 0.0)
            out.emplace_back(*(it - 1), x);
        else
            out.emplace_back(x, *(it + 1));
    }
    return out;
}

std::vector<double> static_interval_lengths(const SampleFrame& frame) {
    std::vector<double> out;
    out.reserve(frame.xs.size());
    for (const auto& [lo, hi] : static_intervals(frame)) out.push_back(hi - lo);
    return out;
}

std::pair<double, double> sample_boundaries(const BranchingParams& p, RngStream& rng) {
    check_sampling_params(p);
    const double e_g = rng.exponential(2.0 * p.theta);
    const double e_d = rng.exponential(2.0 * p.theta);
    return {e_g, e_d};
}

void sample_full_ancestral_given(const BranchingParams& p, double eps_trunc, double e_g,
                                 double e_d, RngStream& rng, AncestralProcess& out) {
    check_sampling_params(p);
    if (!(eps_trunc > 0.0))
        throw std::invalid_argument("sample_full_ancestral: eps_trunc must be > 0 "
                                    "(total intensity is infinite)");
    if (!(e_g > 0.0) || !(e_d > 0.0))
        throw std::invalid_argument("sample_full_ancestral: boundaries must be > 0");
    out.e_g = e_g;
    out.e_d = e_d;
    out.atoms.clear();
    const double c_eps = c_theta(p, eps_trunc);
    const std::uint64_t n = rng.poisson((e_g + e_d) * c_eps);
    out.atoms.reserve(n);
    std::uint64_t resamples = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double u = draw_position(rng, -e_g, e_d, resamples);
        const double zeta = c_theta_inv(p, rng.uniform01() * c_eps);
        out.atoms.push_back({u, zeta});
    }
    sort_atoms(out);
    // collisions have probability zero; nudge by redraw if they ever occur
    while (std::adjacent_find(out.atoms.begin(), out.atoms.end(),
                              [](const Atom& a, const Atom& b) { return a.u == b.u; }) !=
           out.atoms.end()) {
        for (std::size_t i = 1; i < out.atoms.size(); ++i)
            if (out.atoms[i].u == out.atoms[i - 1].u)
                out.atoms[i].u = draw_position(rng, -e_g, e_d, resamples);
        sort_atoms(out);
    }
}

AncestralProcess sample_full_ancestral(const BranchingParams& p, double eps_trunc,
                                       RngStream& rng) {
    const auto [e_g, e_d] = sample_boundaries(p, rng);
    AncestralProcess out;
    sample_full_ancestral_given(p, eps_trunc, e_g, e_d, rng, out);
    return out;
}

namespace {

StaticSample static_from_frame(const BranchingParams& p, SampleFrame frame, RngStream& rng) {
    const auto lengths = static_interval_lengths(frame);
    AncestralProcess ap;
    ap.e_g = frame.e_g;
    ap.e_d = frame.e_d;
    ap.atoms.reserve(frame.xs.size());
    for (std::size_t k = 0; k < frame.xs.size(); ++k)
        ap.atoms.push_back({frame.xs[k], sample_zeta_star(p, lengths[k], rng)});
    sort_atoms(ap);
    return {std::move(frame), std::move(ap)};
}

} // namespace

StaticSample sample_static(const BranchingParams& p, std::size_t n, RngStream& rng) {
    check_sampling_params(p);
    if (n == 0) throw std::invalid_argument("sample_static: n must be >= 1");
    SampleFrame frame;
    std::tie(frame.e_g, frame.e_d) = sample_boundaries(p, rng);
    draw_positions(frame, n, rng);
    return static_from_frame(p, std::move(frame), rng);
}

StaticSample sample_static_conditional_z0(const BranchingParams& p, std::size_t n, double z0,
                                          RngStream& rng) {
    if (!(z0 > 0.0))
        throw std::invalid_argument("sample_static_conditional_z0: z0 must be > 0");
    return sample_static_given_boundaries(p, n, 0.5 * z0, 0.5 * z0, rng);
}

StaticSample sample_static_given_boundaries(const BranchingParams& p, std::size_t n, double e_g,
                                            double e_d, RngStream& rng) {
    check_sampling_params(p);
    if (n == 0) throw std::invalid_argument("sample_static: n must be >= 1");
    if (!(e_g > 0.0) || !(e_d > 0.0))
        throw std::invalid_argument("sample_static: boundaries must be > 0");
    SampleFrame frame;
    frame.e_g = e_g;
    frame.e_d = e_d;
    draw_positions(frame, n, rng);
    return static_from_frame(p, std::move(frame), rng);
}

namespace {

// Nearest members of {-e_g, e_d, 0, xs[0..m-1]} on either side of x.
std::pair<double, double> neighbors(const SampleFrame& frame, std::size_t m, double x) {
    double lo = -frame.e_g, hi = frame.e_d;
    if (0.0 > lo && 0.0 < x) lo = 0.0;
    if (0.0 < hi && 0.0 > x) hi = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double y = frame.xs[j];
        if (y < x && y > lo) lo = y;
        if (y > x && y < hi) hi = y;
    }
    return {lo, hi};
}

void check_interlacing(const SampleFrame& frame, const std::vector<double>& vs) {
    std::vector<double> xs_sorted;
    xs_sorted.reserve(vs.size() + 1);
    xs_sorted.push_back(0.0);
    xs_sorted.insert(xs_sorted.end(), frame.xs.begin(), frame.xs.begin() +
                     static_cast<std::ptrdiff_t>(vs.size()));
    std::sort(xs_sorted.begin(), xs_sorted.end());
    std::vector<double> vs_sorted = vs;
    std::sort(vs_sorted.begin(), vs_sorted.end());
    for (std::size_t k = 0; k < vs_sorted.size(); ++k)
        if (!(xs_sorted[k] < vs_sorted[k] && vs_sorted[k] < xs_sorted[k + 1]))
            throw std::logic_error("dynamic sampler: interlacing of positions violated");
}

} // namespace

DynamicSample sample_dynamic_v(const BranchingParams& p, std::size_t n, RngStream& rng) {
    check_sampling_params(p);
    if (n == 0) throw std::invalid_argument("sample_dynamic_v: n must be >= 1");
    DynamicSample out;
    SampleFrame& frame = out.frame;
    std::tie(frame.e_g, frame.e_d) = sample_boundaries(p, rng);
    std::vector<double> vs, zetas;
    for (std::size_t m = 1; m <= n; ++m) {
        // next sampled position, distinct from the earlier ones
        double x;
        for (;;) {
            x = draw_position(rng, -frame.e_g, frame.e_d, frame.resample_count);
            if (std::find(frame.xs.begin(), frame.xs.end(), x) == frame.xs.end()) break;
            ++frame.resample_count;
        }
        frame.xs.push_back(x);
        const auto [xg, xd] = neighbors(frame, m - 1, x);
        DynamicStep step;
        if (xd == frame.e_d || xg == -frame.e_g) {
            if (xd == frame.e_d && xg == -frame.e_g)
                throw std::logic_error("dynamic sampler: origin missing from neighbor set");
            step.boundary = true;
            step.side = (xd == frame.e_d) ? 'g' : 'd';
            if (step.side == 'g') {
                step.interval_lo = xg;
                step.interval_hi = x;
            } else {
                step.interval_lo = x;
                step.interval_hi = xd;
            }
            step.v = rng.uniform(step.interval_lo, step.interval_hi);
            step.cond_height = std::numeric_limits<double>::infinity();
            zetas.push_back(sample_zeta_star(p, step.interval_hi - step.interval_lo, rng));
        } else {
            if (m == 1) throw std::logic_error("dynamic sampler: interior case at first step");
            std::ptrdiff_t kappa = -1;
            for (std::size_t j = 0; j < vs.size(); ++j) {
                if (vs[j] >= xg && vs[j] <= xd) {
                    if (kappa >= 0)
                        throw std::logic_error("dynamic sampler: straddled gap holds two atoms");
                    kappa = static_cast<std::ptrdiff_t>(j);
                }
            }
            if (kappa < 0)
                throw std::logic_error("dynamic sampler: straddled gap holds no atom");
            step.kappa = kappa;
            step.side = (x < vs[static_cast<std::size_t>(kappa)]) ? 'g' : 'd';
            if (step.side == 'g') {
                step.interval_lo = xg;
                step.interval_hi = x;
            } else {
                step.interval_lo = x;
                step.interval_hi = xd;
            }
            step.v = rng.uniform(step.interval_lo, step.interval_hi);
            step.cond_height = zetas[static_cast<std::size_t>(kappa)];
            zetas.push_back(sample_zeta_star_conditioned(
                p, step.interval_hi - step.interval_lo, step.cond_height, rng));
        }
        vs.push_back(step.v);
        out.trace.steps.push_back(step);
        check_interlacing(frame, vs);

        AncestralProcess ap;
        ap.e_g = frame.e_g;
        ap.e_d = frame.e_d;
        ap.atoms.reserve(m);
        for (std::size_t j = 0; j < m; ++j) ap.atoms.push_back({vs[j], zetas[j]});
        sort_atoms(ap);
        out.processes.push_back(std::move(ap));
    }
    return out;
}

DynamicSample sample_dynamic_h(const BranchingParams& p, std::size_t n, RngStream& rng) {
    check_sampling_params(p);
    if (n == 0) throw std::invalid_argument("sample_dynamic_h: n must be >= 1");
    DynamicSample out;
    SampleFrame& frame = out.frame;
    std::tie(frame.e_g, frame.e_d) = sample_boundaries(p, rng);
    std::vector<double> heights;
    for (std::size_t m = 1; m <= n; ++m) {
        double x;
        for (;;) {
            x = draw_position(rng, -frame.e_g, frame.e_d, frame.resample_count);
            if (std::find(frame.xs.begin(), frame.xs.end(), x) == frame.xs.end()) break;
            ++frame.resample_count;
        }
        frame.xs.push_back(x);
        const auto [xg, xd] = neighbors(frame, m - 1, x);
        // 0 is always a neighbor candidate, so the gap never straddles the origin
        if (x > 0.0 && xg < 0.0)
            throw std::logic_error("dynamic sampler: gap straddles the origin");
        if (x < 0.0 && xd > 0.0)
            throw std::logic_error("dynamic sampler: gap straddles the origin");
        DynamicStep step;
        if (xd == frame.e_d || xg == -frame.e_g) {
            if (xd == frame.e_d && xg == -frame.e_g)
                throw std::logic_error("dynamic sampler: origin missing from neighbor set");
            step.boundary = true;
            step.side = (xd == frame.e_d) ? 'g' : 'd';
            if (step.side == 'g') {
                step.interval_lo = xg;
                step.interval_hi = x;
            } else {
                step.interval_lo = x;
                step.interval_hi = xd;
            }
            heights.push_back(sample_zeta_star(p, step.interval_hi - step.interval_lo, rng));
        } else {
            if (m == 1) throw std::logic_error("dynamic sampler: interior case at first step");
            const double len_g = x - xg;
            const double len_d = xd - x;
            step.p_d = len_d / (len_d + len_g);
            if (x > 0.0) {
                // neighbor on the right holds the gap's deepest lineage candidate
                std::ptrdiff_t kd = -1;
                for (std::size_t j = 0; j + 1 < m; ++j)
                    if (frame.xs[j] == xd) kd = static_cast<std::ptrdiff_t>(j);
                if (kd < 0) throw std::logic_error("dynamic sampler: missing right neighbor");
                step.kappa = kd;
                const double cap = heights[static_cast<std::size_t>(kd)];
                step.cond_height = cap;
                if (rng.uniform01() < step.p_d) {
                    heights.push_back(sample_zeta_star_conditioned(p, len_g, cap, rng));
                } else {
                    step.transferred = true;
                    heights.push_back(cap);
                    heights[static_cast<std::size_t>(kd)] =
                        sample_zeta_star_conditioned(p, len_d, cap, rng);
                }
            } else {
                std::ptrdiff_t kg = -1;
                for (std::size_t j = 0; j + 1 < m; ++j)
                    if (frame.xs[j] == xg) kg = static_cast<std::ptrdiff_t>(j);
                if (kg < 0) throw std::logic_error("dynamic sampler: missing left neighbor");
                step.kappa = kg;
                const double cap = heights[static_cast<std::size_t>(kg)];
                step.cond_height = cap;
                if (rng.uniform01() < 1.0 - step.p_d) {
                    heights.push_back(sample_zeta_star_conditioned(p, len_d, cap, rng));
                } else {
                    step.transferred = true;
                    heights.push_back(cap);
                    heights[static_cast<std::size_t>(kg)] =
                        sample_zeta_star_conditioned(p, len_g, cap, rng);
                }
            }
        }
        out.trace.steps.push_back(step);

        AncestralProcess ap;
        ap.e_g = frame.e_g;
        ap.e_d = frame.e_d;
        ap.atoms.reserve(m);
        for (std::size_t j = 0; j < m; ++j) ap.atoms.push_back({frame.xs[j], heights[j]});
        sort_atoms(ap);
        out.processes.push_back(std::move(ap));
    }
    return out;
}

StaticSample sample_conditional_tmrca(const BranchingParams& p, std::size_t n, double h,
                                      RngStream& rng) {
    check_sampling_params(p);
    if (n == 0) throw std::invalid_argument("sample_conditional_tmrca: n must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("sample_conditional_tmrca: h must be > 0");
    const double rate = 2.0 * p.theta + c_theta(p, h);
    const double e1 = rng.exponential(rate);
    const double e2 = rng.exponential(rate);
    const double e3 = rng.exponential(rate);
    const bool xi = rng.bernoulli(0.5);
    SampleFrame frame;
    double deepest_x; // position of the lineage realizing the population TMRCA
    if (!xi) {
        frame.e_g = e1;
        deepest_x = e2;
        frame.e_d = e2 + e3;
    } else {
        frame.e_g = e1 + e2;
        deepest_x = -e2;
        frame.e_d = e3;
    }
    draw_positions(frame, n, rng);
    const auto intervals = static_intervals(frame);
    AncestralProcess ap;
    ap.e_g = frame.e_g;
    ap.e_d = frame.e_d;
    ap.atoms.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [lo, hi] = intervals[k];
        const double zeta = (deepest_x >= lo && deepest_x <= hi)
                                ? h
                                : sample_zeta_star_conditioned(p, hi - lo, h, rng);
        ap.atoms.push_back({frame.xs[k], zeta});
    }
    sort_atoms(ap);
    return {std::move(frame), std::move(ap)};
}

} // namespace genea
