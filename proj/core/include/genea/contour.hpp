#pragma once

#include <cstddef>
#include <vector>

#include "genea/ancestral_process.hpp"

namespace genea {

// Piecewise-affine contour of a finite ancestral process: value -zeta_i at each
// atom position, 0 at midpoints between consecutive elements (the spine counts as
// an element at position 0 with value 0), 0 one unit beyond the extremes, and
// unit-slope descents to -inf outside. The quotient metric
//   d_g(s,t) = g(s) + g(t) - 2 min_{[s,t]} g
// reproduces the tree metric; this class is an independent route to it and serves
// as the oracle for leaf_distance / point_distance.
class ContourFunction {
public:
    explicit ContourFunction(const AncestralProcess& ap);

    double value(double t) const;
    double min_on(double s, double t) const;
    double distance(double s, double t) const { return value(s) + value(t) - 2.0 * min_on(s, t); }

    // Contour parameter of a segment tip. The spine tip maps to 0; an atom tip to
    // the zero of g adjacent to its dip on the side away from the origin.
    double leaf_param(std::ptrdiff_t segment) const;

    // Contour parameter of an interior point. Atom points sit on the flank of
    // their dip; spine points are reached by first passage of g to -depth left of 0.
    double point_param(const TreePoint& p) const;

private:
    std::vector<double> xs_; // knot positions, strictly increasing
    std::vector<double> gs_; // knot values
    std::vector<std::size_t> atom_knot_; // atom index -> knot index
    std::size_t spine_knot_ = 0;
};

// d_g distance between two tree points, built from scratch each call.
double contour_distance(const AncestralProcess& ap, const TreePoint& p, const TreePoint& q);

} // namespace genea
