#include "genea/newick.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace genea {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Leaf {
    double x;
    double zeta; // 0 for the spine
    std::string label;
};

// Leaves lo..hi merge pairwise at the gap depths; split at the deepest gap.
void emit(std::string& out, const std::vector<Leaf>& leaves, const std::vector<double>& gaps,
          std::size_t lo, std::size_t hi, double& depth_out) {
    if (lo == hi) {
        out += leaves[lo].label;
        depth_out = 0.0;
        return;
    }
    std::size_t split = lo + 1;
    for (std::size_t k = lo + 2; k <= hi; ++k)
        if (gaps[k] > gaps[split]) split = k;
    const double depth = gaps[split];
    out += '(';
    double dl = 0.0, dr = 0.0;
    emit(out, leaves, gaps, lo, split - 1, dl);
    out += ':';
    out += fmt(depth - dl);
    out += ',';
    emit(out, leaves, gaps, split, hi, dr);
    out += ':';
    out += fmt(depth - dr);
    out += ')';
    depth_out = depth;
}

} // namespace

std::string to_newick(const AncestralProcess& ap, const std::vector<std::string>& leaf_labels) {
    if (auto v = validate(ap))
        throw std::invalid_argument("to_newick: invalid ancestral process: " + v->message);
    const std::size_t n = ap.atoms.size();
    if (n == 0) throw std::invalid_argument("to_newick: process has no atoms");
    if (!leaf_labels.empty() && leaf_labels.size() != n + 1)
        throw std::invalid_argument("to_newick: need one label per leaf (spine + atoms)");

    std::vector<Leaf> leaves;
    leaves.reserve(n + 1);
    auto atom_label = [&](std::size_t i) {
        return leaf_labels.empty() ? "A" + std::to_string(i + 1) : leaf_labels[i + 1];
    };
    std::size_t i = 0;
    while (i < n && ap.atoms[i].u < 0.0) {
        leaves.push_back({ap.atoms[i].u, ap.atoms[i].zeta, atom_label(i)});
        ++i;
    }
    leaves.push_back({0.0, 0.0, leaf_labels.empty() ? "S" : leaf_labels[0]});
    for (; i < n; ++i) leaves.push_back({ap.atoms[i].u, ap.atoms[i].zeta, atom_label(i)});

    // gap k sits between leaves k and k+1; its merge depth is the zeta of the
    // atom on the side away from the origin
    std::vector<double> gaps(leaves.size()); // gaps[k+1] pairs with emit's split index
    for (std::size_t k = 0; k + 1 < leaves.size(); ++k)
        gaps[k + 1] = leaves[k].x >= 0.0 ? leaves[k + 1].zeta : leaves[k].zeta;

    std::string out;
    double depth = 0.0;
    emit(out, leaves, gaps, 0, leaves.size() - 1, depth);
    out += ';';
    return out;
}

} // namespace genea
