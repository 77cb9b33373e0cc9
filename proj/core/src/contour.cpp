#include "genea/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace genea {

ContourFunction::ContourFunction(const AncestralProcess& ap) {
    if (auto v = validate(ap))
        throw std::invalid_argument("ContourFunction: invalid ancestral process: " + v->message);
    // elements: atoms plus the spine slot at position 0, sorted by position
    struct Element {
        double x;
        double depth;
        std::ptrdiff_t atom; // kSpine for the spine slot
    };
    std::vector<Element> elems;
    elems.reserve(ap.atoms.size() + 1);
    for (std::size_t i = 0; i < ap.atoms.size(); ++i)
        elems.push_back({ap.atoms[i].u, ap.atoms[i].zeta, static_cast<std::ptrdiff_t>(i)});
    elems.push_back({0.0, 0.0, kSpine});
    std::sort(elems.begin(), elems.end(),
              [](const Element& a, const Element& b) { return a.x < b.x; });

    atom_knot_.assign(ap.atoms.size(), 0);
    xs_.reserve(2 * elems.size() + 1);
    gs_.reserve(2 * elems.size() + 1);
    xs_.push_back(elems.front().x - 1.0);
    gs_.push_back(0.0);
    for (std::size_t k = 0; k < elems.size(); ++k) {
        xs_.push_back(elems[k].x);
        gs_.push_back(-elems[k].depth);
        if (elems[k].atom == kSpine)
            spine_knot_ = xs_.size() - 1;
        else
            atom_knot_[static_cast<std::size_t>(elems[k].atom)] = xs_.size() - 1;
        const double next = (k + 1 < elems.size()) ? elems[k + 1].x : elems[k].x + 2.0;
        xs_.push_back(0.5 * (elems[k].x + next));
        gs_.push_back(0.0);
    }
}

double ContourFunction::value(double t) const {
    if (t <= xs_.front()) return t - xs_.front();
    if (t >= xs_.back()) return xs_.back() - t;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
    const double x0 = xs_[j - 1], x1 = xs_[j];
    const double g0 = gs_[j - 1], g1 = gs_[j];
    return g0 + (g1 - g0) * (t - x0) / (x1 - x0);
}

double ContourFunction::min_on(double s, double t) const {
    if (s > t) std::swap(s, t);
    double m = std::min(value(s), value(t));
    auto first = std::upper_bound(xs_.begin(), xs_.end(), s);
    auto last = std::lower_bound(xs_.begin(), xs_.end(), t);
    for (auto it = first; it != last; ++it)
        m = std::min(m, gs_[static_cast<std::size_t>(it - xs_.begin())]);
    return m;
}

double ContourFunction::leaf_param(std::ptrdiff_t segment) const {
    if (segment == kSpine) return xs_[spine_knot_];
    const std::size_t k = atom_knot_[static_cast<std::size_t>(segment)];
    return xs_[k] > 0.0 ? xs_[k + 1] : xs_[k - 1];
}

double ContourFunction::point_param(const TreePoint& p) const {
    if (p.segment != kSpine) {
        const std::size_t k = atom_knot_[static_cast<std::size_t>(p.segment)];
        const double x = xs_[k];
        const double zeta = -gs_[k];
        if (x > 0.0) {
            const double z = xs_[k + 1]; // zero to the right
            return x + (zeta - p.depth) * (z - x) / zeta;
        }
        const double z = xs_[k - 1]; // zero to the left
        return x - (zeta - p.depth) * (x - z) / zeta;
    }
    // spine at depth a: first passage of g to level -a, walking left from the
    // spine knot; lands on the left descent ray when -a is below every dip.
    const double a = p.depth;
    if (a == 0.0) return xs_[spine_knot_];
    const double target = -a;
    for (std::size_t j = spine_knot_; j-- > 0;) {
        const double v_r = gs_[j + 1];
        const double v_l = gs_[j];
        if (v_l <= target && target < v_r) {
            const double x_r = xs_[j + 1], x_l = xs_[j];
            return x_r + (target - v_r) * (x_l - x_r) / (v_l - v_r);
        }
    }
    return xs_.front() + target;
}

double contour_distance(const AncestralProcess& ap, const TreePoint& p, const TreePoint& q) {
    check_tree_point(ap, p);
    check_tree_point(ap, q);
    const ContourFunction g(ap);
    return g.distance(g.point_param(p), g.point_param(q));
}

} // namespace genea
