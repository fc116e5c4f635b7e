#pragma once

#include <complex>
#include <vector>

namespace sglat {

// Iterative radix-2 FFT, sign = +1 evaluates at e^{+2 pi i t/n}.
void fft(std::vector<std::complex<double>>& a, int sign);

// Double-precision canonical embedding of a coefficient vector: returns
// sigma_j(g) for the n/2 representatives j = 1, 3, ..., n-1, via a twisted
// FFT of length n. Index t holds j = 2t+1.
std::vector<std::complex<double>> embed_double(const std::vector<double>& coeffs);

}  // namespace sglat
