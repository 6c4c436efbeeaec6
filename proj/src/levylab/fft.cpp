#include "levylab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levylab {

namespace {

bool is_pow2(std::size_t n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_pow2(n)) {
        throw std::invalid_argument("fft size must be a power of two");
    }
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
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w =
                    std::polar(1.0, angle * static_cast<double>(k));
                const std::complex<double> even = data[start + k];
                const std::complex<double> odd = data[start + k + len / 2] * w;
                data[start + k] = even + odd;
                data[start + k + len / 2] = even - odd;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : data) v *= scale;
    }
}

void fft_nd(std::vector<std::complex<double>>& data, int dim, int n, bool inverse) {
    if (dim < 1) throw std::invalid_argument("fft rank must be >= 1");
    std::size_t total = 1;
    for (int axis = 0; axis < dim; ++axis) total *= static_cast<std::size_t>(n);
    if (data.size() != total) {
        throw std::invalid_argument("fft_nd: data size does not match n^dim");
    }
    if (dim == 1) {
        fft_pow2(data, inverse);
        return;
    }

    std::vector<std::complex<double>> line(static_cast<std::size_t>(n));
    const std::size_t un = static_cast<std::size_t>(n);
    for (int axis = 0; axis < dim; ++axis) {
        // Row-major layout: axis `a` has stride n^(dim-1-a).
        std::size_t stride = 1;
        for (int a = axis + 1; a < dim; ++a) stride *= un;
        const std::size_t block = stride * un;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t offset = 0; offset < stride; ++offset) {
                for (std::size_t k = 0; k < un; ++k) line[k] = data[base + offset + k * stride];
                fft_pow2(line, inverse);
                for (std::size_t k = 0; k < un; ++k) data[base + offset + k * stride] = line[k];
            }
        }
    }
}

}  // namespace levylab
