#pragma once

#include <iosfwd>
#include <string>

#include "cns/lagrangian/flow_map.hpp"

namespace cns::lagrangian {

/// FLOW1 layout: ASCII "FLOW1", u32 d, f64 time, then the d displacement
/// components and the d^2 entries of D psi (row-major) as SFLD1 blocks.
void write_flow(std::ostream& out, const FlowMap& flow);
/// J, A and adj are rebuilt from D psi.
FlowMap read_flow(std::istream& in);

void write_flow_file(const std::string& path, const FlowMap& flow);
FlowMap read_flow_file(const std::string& path);

}  // namespace cns::lagrangian
