#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cns/spectral/field.hpp"

namespace cns::spectral {

/// SFLD1 layout: ASCII "SFLD1", u32 d, u32 N, f64 L, then N^d f64 values in
/// row-major order. All numbers little-endian.
void write_field(std::ostream& out, const SpectralField& f);
SpectralField read_field(std::istream& in);

void write_field_file(const std::string& path, const SpectralField& f);
SpectralField read_field_file(const std::string& path);

namespace io_detail {
void write_u32(std::ostream& out, std::uint32_t v);
void write_f64(std::ostream& out, double v);
std::uint32_t read_u32(std::istream& in);
double read_f64(std::istream& in);
}  // namespace io_detail

}  // namespace cns::spectral
