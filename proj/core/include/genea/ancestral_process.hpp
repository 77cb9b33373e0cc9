#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace genea {

// One lineage of the ancestral point process: tip at local-time position u != 0,
// reaching zeta deep into the past.
struct Atom {
    double u = 0.0;
    double zeta = 0.0;
};

// Finite ancestral process: atoms sorted by position, all positions distinct,
// nonzero and inside (-e_g, e_d). The semi-infinite spine sits at position 0 and
// is not an atom. Immutable by convention once built; all operations below are
// read-only and thread-safe.
struct AncestralProcess {
    std::vector<Atom> atoms;
    double e_g = std::numeric_limits<double>::infinity();
    double e_d = std::numeric_limits<double>::infinity();

    double z0() const { return e_g + e_d; }
};

// Segment id of the spine. Atom segments are indices into AncestralProcess::atoms.
inline constexpr std::ptrdiff_t kSpine = -1;

// Address of a point inside the tree: a segment (atom or spine) and the distance
// below that segment's tip. depth < zeta of the segment; unbounded on the spine.
struct TreePoint {
    std::ptrdiff_t segment = kSpine;
    double depth = 0.0;
};

struct Violation {
    std::string code;    // "sorted" | "distinct" | "zero-position" | "support" | "zeta" | "boundary"
    std::string message;
    std::ptrdiff_t index = -1;
};

// Checks all structural invariants; returns the first violation found, or nullopt.
// Never throws.
std::optional<Violation> validate(const AncestralProcess& ap);

// Distance between the tips of segments i and j (atom indices or kSpine):
// twice the largest depth among the atoms strictly between them, where "between"
// is the half-open window (x_i, x_j] on the positive side, [x_i, x_j) on the
// negative side and [x_i, x_j] when the pair straddles 0. Empty window -> 0.
double leaf_distance(const AncestralProcess& ap, std::ptrdiff_t i, std::ptrdiff_t j);

// Tree metric between two interior points. Same segment: |depth_p - depth_q|.
// Different segments: with r = leaf_distance/2 of the two tips, the lineages
// join at depth m = max(r, depth_p, depth_q), giving (m - depth_p) + (m - depth_q).
double point_distance(const AncestralProcess& ap, const TreePoint& p, const TreePoint& q);

// Segment the bottom of atom i attaches to: the nearest strictly-taller segment
// toward the origin (kSpine when no atom qualifies).
std::ptrdiff_t attach_index(const AncestralProcess& ap, std::ptrdiff_t i);

// Depth of the most recent common ancestor of all tips: max zeta (0 when empty).
double tmrca(const AncestralProcess& ap);

// Number of distinct ancestors alive at depth s, spine excluded: #{zeta_i > s}.
std::size_t ancestor_count(const AncestralProcess& ap, double s);

// Total branch length of the encoded tree above the spine: sum of zeta_i.
double total_length(const AncestralProcess& ap);

// Branch length truncated eps before the present: sum of (zeta_i - eps)_+.
double truncated_length(const AncestralProcess& ap, double eps);

inline double segment_position(const AncestralProcess& ap, std::ptrdiff_t seg) {
    return seg == kSpine ? 0.0 : ap.atoms[static_cast<std::size_t>(seg)].u;
}

void check_segment(const AncestralProcess& ap, std::ptrdiff_t seg);
void check_tree_point(const AncestralProcess& ap, const TreePoint& p);

} // namespace genea
