#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cns/harmonic/besov.hpp"

namespace cns::harmonic {

/// Columns: j, block_lp_norm.
void write_block_norms_csv(std::ostream& out, const std::vector<BlockNorm>& blocks);
/// Columns: name, value.
void write_named_values_csv(std::ostream& out, const std::vector<std::pair<std::string, double>>& values);

}  // namespace cns::harmonic
