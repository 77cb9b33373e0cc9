#pragma once

#include <string>

#include "genea/ancestral_process.hpp"
#include "genea/params.hpp"

namespace genea {

// {"beta":..,"theta":..,"e_g":..,"e_d":..,"atoms":[{"u":..,"zeta":..},...]}
// Atoms in position order, numbers printed with 17 significant digits so the
// doubles round-trip bit-exactly. Boundaries must be finite.
std::string to_json(const BranchingParams& p, const AncestralProcess& ap);

// Inverse of to_json; validates the decoded process.
AncestralProcess ancestral_process_from_json(const std::string& text,
                                             BranchingParams* params_out = nullptr);

// "u,zeta" rows, one atom per line, 17 significant digits.
std::string atoms_csv(const AncestralProcess& ap);

std::string format_double(double v); // %.17g

} // namespace genea
