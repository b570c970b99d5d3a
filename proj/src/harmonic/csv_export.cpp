#include "cns/harmonic/csv_export.hpp"

#include <iomanip>
#include <ostream>

namespace cns::harmonic {

void write_block_norms_csv(std::ostream& out, const std::vector<BlockNorm>& blocks) {
    out << "j,block_lp_norm\n" << std::setprecision(17);
    for (const auto& b : blocks) out << b.j << ',' << b.lp_norm << '\n';
}

void write_named_values_csv(std::ostream& out, const std::vector<std::pair<std::string, double>>& values) {
    out << "name,value\n" << std::setprecision(17);
    for (const auto& [name, value] : values) out << name << ',' << value << '\n';
}

}  // namespace cns::harmonic
