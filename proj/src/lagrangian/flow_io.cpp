#include "cns/lagrangian/flow_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cns/spectral/snapshot_io.hpp"

namespace cns::lagrangian {

void write_flow(std::ostream& out, const FlowMap& flow) {
    const int d = flow.grid().dim();
    out.write("FLOW1", 5);
    spectral::io_detail::write_u32(out, static_cast<std::uint32_t>(d));
    spectral::io_detail::write_f64(out, flow.time);
    for (int a = 0; a < d; ++a) spectral::write_field(out, flow.displacement[a]);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) spectral::write_field(out, flow.jacobian(i, j));
    }
    if (!out) throw std::runtime_error("flow: write failed");
}

FlowMap read_flow(std::istream& in) {
    char magic[5];
    if (!in.read(magic, 5) || std::memcmp(magic, "FLOW1", 5) != 0) {
        throw std::runtime_error("flow: missing FLOW1 header");
    }
    const int d = static_cast<int>(spectral::io_detail::read_u32(in));
    if (d < 1 || d > 3) throw std::runtime_error("flow: bad dimension");
    const double t = spectral::io_detail::read_f64(in);
    std::vector<SpectralField> comps;
    for (int a = 0; a < d; ++a) comps.push_back(spectral::read_field(in));
    const auto& grid = comps.front().grid();
    for (const auto& c : comps) {
        if (c.grid() != grid || grid.dim() != d) throw std::runtime_error("flow: inconsistent blocks");
    }
    TensorField jac(grid);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            jac(i, j) = spectral::read_field(in);
            if (jac(i, j).grid() != grid) throw std::runtime_error("flow: inconsistent blocks");
        }
    }
    return FlowMap::from_parts(t, VectorField(std::move(comps)), std::move(jac));
}

void write_flow_file(const std::string& path, const FlowMap& flow) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("flow: cannot open " + path);
    write_flow(out, flow);
}

FlowMap read_flow_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("flow: cannot open " + path);
    return read_flow(in);
}

}  // namespace cns::lagrangian
