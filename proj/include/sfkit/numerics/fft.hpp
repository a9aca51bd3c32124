#pragma once

// In-repo radix-2 FFT so the spectral estimators are reproducible without an
// external transform dependency. Real-input forward/inverse wrappers use the
// half-size complex packing.

#include <complex>
#include <cstddef>
#include <vector>

namespace sfkit {

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

// In-place complex radix-2 transform; length must be a power of two
// (NotPowerOfTwo otherwise). inverse=true applies the 1/L scale.
void fft_complex(std::vector<std::complex<double>>& data, bool inverse);

// Forward transform of a real signal zero-padded to padded_length
// (power of two, >= signal length). Returns padded_length/2 + 1 bins.
std::vector<std::complex<double>> fft_real(const std::vector<double>& signal,
                                           std::size_t padded_length);

// Inverse of fft_real: spectrum of padded_length/2 + 1 bins back to
// padded_length real samples.
std::vector<double> ifft_real(const std::vector<std::complex<double>>& spectrum,
                              std::size_t padded_length);

}  // namespace sfkit
