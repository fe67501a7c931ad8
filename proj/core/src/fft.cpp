#include "entim/fft.hpp"

#include "entim/errors.hpp"

#include <cmath>

namespace entim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }
} // namespace

FftPlan::FftPlan(int n) : n_(n) {
  if (!is_power_of_two(n))
    throw ConfigError("FFT size must be a power of two, got " + std::to_string(n));
  scale_ = 1.0 / std::sqrt(static_cast<double>(n_));
  bitrev_.resize(n_);
  int log2n = 0;
  while ((1 << log2n) < n_) ++log2n;
  for (int i = 0; i < n_; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b)
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    bitrev_[i] = r;
  }
  twiddle_.resize(n_ / 2 > 0 ? n_ / 2 : 1);
  for (int k = 0; k < n_ / 2; ++k) {
    const double phase = -kTwoPi * static_cast<double>(k) / static_cast<double>(n_);
    twiddle_[k] = {std::cos(phase), std::sin(phase)};
  }
}

void FftPlan::transform(std::complex<double>* data, int sign) const {
  if (n_ == 1) return;

  for (int i = 0; i < n_; ++i) {
    const int j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }

  for (int len = 2; len <= n_; len <<= 1) {
    const int half = len >> 1;
    const int step = n_ / len;
    for (int block = 0; block < n_; block += len) {
      for (int j = 0; j < half; ++j) {
        std::complex<double> w = twiddle_[static_cast<std::size_t>(j) * step];
        if (sign > 0) w = std::conj(w);
        const std::complex<double> odd = data[block + half + j] * w;
        const std::complex<double> even = data[block + j];
        data[block + j] = even + odd;
        data[block + half + j] = even - odd;
      }
    }
  }

  for (int i = 0; i < n_; ++i) data[i] *= scale_;
}

} // namespace entim
