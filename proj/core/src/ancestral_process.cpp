#include "genea/ancestral_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace genea {

namespace {

std::size_t idx(std::ptrdiff_t i) { return static_cast<std::size_t>(i); }

// Largest zeta among atoms with u in [lo, hi] after dropping the excluded
// endpoint(s); 0 when the window is empty.
double max_zeta_in_window(const AncestralProcess& ap, double lo, double hi,
                          bool include_lo, bool include_hi) {
    const auto& atoms = ap.atoms;
    auto first = std::lower_bound(atoms.begin(), atoms.end(), lo,
                                  [](const Atom& a, double v) { return a.u < v; });
    if (first != atoms.end() && first->u == lo && !include_lo) ++first;
    auto last = std::upper_bound(first, atoms.end(), hi,
                                 [](double v, const Atom& a) { return v < a.u; });
    if (last != first && std::prev(last)->u == hi && !include_hi) --last;
    double m = 0.0;
    for (auto it = first; it != last; ++it) m = std::max(m, it->zeta);
    return m;
}

} // namespace

std::optional<Violation> validate(const AncestralProcess& ap) {
    if (!(ap.e_g > 0.0) || !(ap.e_d > 0.0))
        return Violation{"boundary", "e_g and e_d must be > 0", -1};
    for (std::size_t i = 0; i < ap.atoms.size(); ++i) {
        const Atom& a = ap.atoms[i];
        const auto at = static_cast<std::ptrdiff_t>(i);
        if (!std::isfinite(a.u) || a.u == 0.0)
            return Violation{"zero-position", "atom position must be finite and nonzero", at};
        if (!(a.zeta > 0.0) || !std::isfinite(a.zeta))
            return Violation{"zeta", "atom depth must be finite and > 0", at};
        if (!(a.u > -ap.e_g) || !(a.u < ap.e_d))
            return Violation{"support", "atom position outside (-e_g, e_d)", at};
        if (i > 0) {
            if (ap.atoms[i - 1].u == a.u)
                return Violation{"distinct", "duplicate atom position", at};
            if (ap.atoms[i - 1].u > a.u)
                return Violation{"sorted", "atoms not sorted by position", at};
        }
    }
    // Finiteness on compacts is automatic for a finite atom sequence.
    return std::nullopt;
}

void check_segment(const AncestralProcess& ap, std::ptrdiff_t seg) {
    if (seg == kSpine) return;
    if (seg < 0 || idx(seg) >= ap.atoms.size())
        throw std::invalid_argument("invalid segment index");
}

void check_tree_point(const AncestralProcess& ap, const TreePoint& p) {
    check_segment(ap, p.segment);
    if (!(p.depth >= 0.0)) throw std::invalid_argument("TreePoint: depth must be >= 0");
    if (p.segment != kSpine && !(p.depth < ap.atoms[idx(p.segment)].zeta))
        throw std::invalid_argument("TreePoint: depth must be < segment depth");
}

double leaf_distance(const AncestralProcess& ap, std::ptrdiff_t i, std::ptrdiff_t j) {
    check_segment(ap, i);
    check_segment(ap, j);
    if (i == j) return 0.0;
    double x = segment_position(ap, i);
    double y = segment_position(ap, j);
    if (x > y) std::swap(x, y);
    double m;
    if (x >= 0.0)
        m = max_zeta_in_window(ap, x, y, false, true); // (x, y]
    else if (y <= 0.0)
        m = max_zeta_in_window(ap, x, y, true, false); // [x, y)
    else
        m = max_zeta_in_window(ap, x, y, true, true);  // [x, y], 0 is never an atom
    return 2.0 * m;
}

double point_distance(const AncestralProcess& ap, const TreePoint& p, const TreePoint& q) {
    check_tree_point(ap, p);
    check_tree_point(ap, q);
    if (p.segment == q.segment) return std::fabs(p.depth - q.depth);
    const double r = 0.5 * leaf_distance(ap, p.segment, q.segment);
    const double m = std::max({r, p.depth, q.depth});
    return (m - p.depth) + (m - q.depth);
}

std::ptrdiff_t attach_index(const AncestralProcess& ap, std::ptrdiff_t i) {
    check_segment(ap, i);
    if (i == kSpine) throw std::invalid_argument("attach_index: spine has no parent");
    const Atom& a = ap.atoms[idx(i)];
    if (a.u > 0.0) {
        for (std::ptrdiff_t j = i - 1; j >= 0; --j) {
            if (ap.atoms[idx(j)].u <= 0.0) break;
            if (ap.atoms[idx(j)].zeta > a.zeta) return j;
        }
    } else {
        for (std::ptrdiff_t j = i + 1; j < static_cast<std::ptrdiff_t>(ap.atoms.size()); ++j) {
            if (ap.atoms[idx(j)].u >= 0.0) break;
            if (ap.atoms[idx(j)].zeta > a.zeta) return j;
        }
    }
    return kSpine;
}

double tmrca(const AncestralProcess& ap) {
    double m = 0.0;
    for (const Atom& a : ap.atoms) m = std::max(m, a.zeta);
    return m;
}

std::size_t ancestor_count(const AncestralProcess& ap, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("ancestor_count: s must be > 0");
    std::size_t n = 0;
    for (const Atom& a : ap.atoms)
        if (a.zeta > s) ++n;
    return n;
}

double total_length(const AncestralProcess& ap) {
    double s = 0.0;
    for (const Atom& a : ap.atoms) s += a.zeta;
    return s;
}

double truncated_length(const AncestralProcess& ap, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("truncated_length: eps must be >= 0");
    double s = 0.0;
    for (const Atom& a : ap.atoms) s += std::max(a.zeta - eps, 0.0);
    return s;
}

} // namespace genea
