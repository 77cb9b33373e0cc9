#pragma once

#include <string>
#include <vector>

#include "genea/ancestral_process.hpp"

namespace genea {

// Rooted binary Newick encoding of the tree. The root sits on the spine at depth
// tmrca; leaves are the spine tip plus every atom tip. Topology follows recursive
// splitting at the deepest inter-leaf merge, so the Newick path length between any
// two leaves equals leaf_distance.
//
// leaf_labels: index 0 is the spine, index 1+i is atom i (position order).
// Empty -> defaults "S", "A1", "A2", ... Requires at least one atom.
std::string to_newick(const AncestralProcess& ap,
                      const std::vector<std::string>& leaf_labels = {});

} // namespace genea
