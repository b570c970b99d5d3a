#include "cns/spectral/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cns::spectral {

namespace io_detail {

namespace {

template <typename T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
        std::memcpy(&v, bytes, sizeof(T));
        return v;
    }
}

}  // namespace

void write_u32(std::ostream& out, std::uint32_t v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_f64(std::ostream& out, double v) {
    std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
}

std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) throw std::runtime_error("snapshot: truncated input");
    return to_little(v);
}

double read_f64(std::istream& in) {
    std::uint64_t bits = 0;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof(bits))) throw std::runtime_error("snapshot: truncated input");
    return std::bit_cast<double>(to_little(bits));
}

}  // namespace io_detail

void write_field(std::ostream& out, const SpectralField& f) {
    out.write("SFLD1", 5);
    io_detail::write_u32(out, static_cast<std::uint32_t>(f.grid().dim()));
    io_detail::write_u32(out, static_cast<std::uint32_t>(f.grid().n()));
    io_detail::write_f64(out, f.grid().length());
    for (double v : f.physical()) io_detail::write_f64(out, v);
    if (!out) throw std::runtime_error("snapshot: write failed");
}

SpectralField read_field(std::istream& in) {
    char magic[5];
    if (!in.read(magic, 5) || std::memcmp(magic, "SFLD1", 5) != 0) {
        throw std::runtime_error("snapshot: missing SFLD1 header");
    }
    const int d = static_cast<int>(io_detail::read_u32(in));
    const int n = static_cast<int>(io_detail::read_u32(in));
    const double length = io_detail::read_f64(in);
    TorusGrid grid(d, n, length);
    std::vector<double> values(grid.size());
    for (auto& v : values) v = io_detail::read_f64(in);
    return SpectralField::from_physical(grid, std::move(values));
}

void write_field_file(const std::string& path, const SpectralField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("snapshot: cannot open " + path);
    write_field(out, f);
}

SpectralField read_field_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("snapshot: cannot open " + path);
    return read_field(in);
}

}  // namespace cns::spectral
