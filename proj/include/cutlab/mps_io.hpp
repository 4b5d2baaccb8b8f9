#pragma once

#include <string>

#include "cutlab/model.hpp"

namespace cutlab {

/// Free-format MPS subset reader (minimization): NAME, ROWS (N/L/G/E),
/// COLUMNS with INTORG/INTEND markers, RHS, BOUNDS (UP, LO, FX, BV, MI, PL,
/// UI, LI), ENDATA. G rows are negated into LE form, E rows keep the EQ tag.
/// RANGES, OBJSENSE MAX and anything else raise ModelError.
MipInstance instance_from_mps(const std::string& text);
MipInstance load_mps(const std::string& path);

}  // namespace cutlab
