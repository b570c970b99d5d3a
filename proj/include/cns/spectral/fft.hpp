#pragma once

#include <complex>
#include <vector>

namespace cns::spectral {

using Complex = std::complex<double>;

/// Unnormalized multidimensional complex DFT of an n^dim row-major array.
/// sign = -1 is the forward transform, +1 the inverse.
void fft_inplace(std::vector<Complex>& data, int dim, int n, int sign);

}  // namespace cns::spectral
