#ifndef SPARSETRIG_FFT3_HPP
#define SPARSETRIG_FFT3_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsetrig {

// Forward DFT F_k = sum_p a_p exp(-2*pi*i*k*p/n) for n a power of three,
// radix-3 Cooley-Tukey, natural-order output. No normalization.
void fft3_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

// Direct O(n^2) evaluation of the same sum; serial reference kept as the
// test oracle and benchmark baseline. Works for any n >= 1.
std::vector<std::complex<double>> dft_direct(std::span<const std::complex<double>> in);

}  // namespace sparsetrig

#endif
