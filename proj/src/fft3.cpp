#include "sparsetrig/fft3.hpp"

#include <cmath>

#include "sparsetrig/errors.hpp"

namespace sparsetrig {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// decimation in time; reads in[0], in[stride], ... and writes n contiguous outputs
void fft3_rec(const std::complex<double>* in, std::complex<double>* out, std::size_t n,
              std::size_t stride) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t third = n / 3;
  fft3_rec(in, out, third, stride * 3);
  fft3_rec(in + stride, out + third, third, stride * 3);
  fft3_rec(in + 2 * stride, out + 2 * third, third, stride * 3);

  const std::complex<double> omega(-0.5, -0.8660254037844386467637231707529362);  // exp(-2*pi*i/3)
  const std::complex<double> omega2 = std::conj(omega);
  for (std::size_t k = 0; k < third; ++k) {
    double phase = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    std::complex<double> w1 = std::polar(1.0, phase);
    std::complex<double> a = out[k];
    std::complex<double> b = w1 * out[k + third];
    std::complex<double> c = (w1 * w1) * out[k + 2 * third];
    out[k] = a + b + c;
    out[k + third] = a + omega * b + omega2 * c;
    out[k + 2 * third] = a + omega2 * b + omega * c;
  }
}

}  // namespace

void fft3_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  std::size_t n = in.size();
  if (out.size() != n) throw InternalError("fft3 output size mismatch");
  std::size_t check = n;
  while (check > 1) {
    if (check % 3 != 0) throw InternalError("fft3 length must be a power of three");
    check /= 3;
  }
  fft3_rec(in.data(), out.data(), n, 1);
}

std::vector<std::complex<double>> dft_direct(std::span<const std::complex<double>> in) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      double phase = -kTwoPi * static_cast<double>(k) * static_cast<double>(p) / static_cast<double>(n);
      acc += in[p] * std::polar(1.0, phase);
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace sparsetrig
