#pragma once

#include <complex>
#include <vector>

namespace polariton::detail {

/// Unnormalized DFT, X_k = sum_n x_n exp(sign * 2 pi i k n / N), via FFTW.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, int sign);

}  // namespace polariton::detail
