#ifndef CIRCLENS_FFT_HPP
#define CIRCLENS_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace circlens {

// Unnormalized discrete Fourier transform
//   out[k] = sum_l in[l] exp(sign * 2 pi i k l / M),  sign = +1 or -1.
// Lengths below 256 use the direct O(M^2) sum; longer inputs go to FFTW.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign);

// Row-major multi-dimensional transform (FFTW). dims lists the extent of
// each axis, slowest varying first.
std::vector<std::complex<double>> dft_nd(std::span<const std::complex<double>> in,
                                         std::span<const int> dims, int sign);

}  // namespace circlens

#endif  // CIRCLENS_FFT_HPP
