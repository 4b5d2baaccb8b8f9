#pragma once

#include <string>

#include "cutlab/model.hpp"

namespace cutlab {

/// Instance JSON schema:
///   {name, n, m, objective[], rows[[coef...]...], rhs[], row_kind[],
///    lower[], upper[], integer[]}
/// Infinite bounds are written as +/-1e30 and read back from any magnitude
/// >= 1e30, from null, or from the strings "inf"/"+inf"/"-inf".
/// The reader rejects NaN entries and mismatched dimensions (ModelError).
MipInstance instance_from_json(const std::string& text);
std::string instance_to_json(const MipInstance& inst, int indent = 2);

MipInstance load_instance(const std::string& path);
void save_instance(const MipInstance& inst, const std::string& path);

/// Incumbent file: {"point": [...], "value": optional}. The point must be
/// MIP-feasible for the instance it is used with; callers verify.
Incumbent incumbent_from_json(const std::string& text);
Incumbent load_incumbent(const std::string& path);

}  // namespace cutlab
