#pragma once

#include <complex>
#include <vector>

namespace levylab {

// In-place radix-2 FFT; the size must be a power of two. The inverse variant
// includes the 1/n factor, so forward followed by inverse is the identity up
// to roundoff.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse);

// Rank-`dim` transform of a row-major array with extent n per axis
// (data.size() == n^dim), applying the 1-d transform along every axis.
void fft_nd(std::vector<std::complex<double>>& data, int dim, int n, bool inverse);

}  // namespace levylab
