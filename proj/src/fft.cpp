#include "sfkit/numerics/fft.hpp"

#include <cmath>
#include <numbers>

#include "sfkit/errors.hpp"

namespace sfkit {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_complex(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n))
        throw Error(ErrorCode::NotPowerOfTwo, "transform length " + std::to_string(n));
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& z : data) z *= scale;
    }
}

std::vector<std::complex<double>> fft_real(const std::vector<double>& signal,
                                           std::size_t padded_length) {
    if (!is_power_of_two(padded_length))
        throw Error(ErrorCode::NotPowerOfTwo,
                    "padded length " + std::to_string(padded_length));
    if (padded_length < signal.size())
        throw Error(ErrorCode::LengthMismatch, "padded length shorter than signal");

    const std::size_t n = padded_length;
    if (n == 1) {
        return {std::complex<double>(signal.empty() ? 0.0 : signal[0], 0.0)};
    }

    // Pack even/odd samples into one half-size complex transform.
    const std::size_t half = n / 2;
    std::vector<std::complex<double>> packed(half, {0.0, 0.0});
    for (std::size_t i = 0; i < half; ++i) {
        const double re = 2 * i < signal.size() ? signal[2 * i] : 0.0;
        const double im = 2 * i + 1 < signal.size() ? signal[2 * i + 1] : 0.0;
        packed[i] = {re, im};
    }
    fft_complex(packed, false);

    std::vector<std::complex<double>> spectrum(half + 1);
    const std::complex<double> j(0.0, 1.0);
    for (std::size_t k = 0; k <= half; ++k) {
        const std::size_t k_mod = k % half;
        const std::size_t nk = (half - k_mod) % half;
        const std::complex<double> zk = packed[k_mod];
        const std::complex<double> znk = std::conj(packed[nk]);
        const std::complex<double> even = 0.5 * (zk + znk);
        const std::complex<double> odd = -0.5 * j * (zk - znk);
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n);
        spectrum[k] = even + std::complex<double>(std::cos(angle), std::sin(angle)) * odd;
    }
    return spectrum;
}

std::vector<double> ifft_real(const std::vector<std::complex<double>>& spectrum,
                              std::size_t padded_length) {
    if (!is_power_of_two(padded_length))
        throw Error(ErrorCode::NotPowerOfTwo,
                    "padded length " + std::to_string(padded_length));
    if (spectrum.size() != padded_length / 2 + 1)
        throw Error(ErrorCode::LengthMismatch, "spectrum bins do not match padded length");

    // Full Hermitian spectrum through the complex inverse; simple and exact
    // enough for the 1e-10 round-trip contract.
    std::vector<std::complex<double>> full(padded_length);
    for (std::size_t k = 0; k < spectrum.size(); ++k) full[k] = spectrum[k];
    for (std::size_t k = spectrum.size(); k < padded_length; ++k)
        full[k] = std::conj(full[padded_length - k]);
    fft_complex(full, true);

    std::vector<double> out(padded_length);
    for (std::size_t i = 0; i < padded_length; ++i) out[i] = full[i].real();
    return out;
}

}  // namespace sfkit
