#ifndef ENTIM_FFT_HPP
#define ENTIM_FFT_HPP

#include <complex>
#include <vector>

namespace entim {

/// Radix-2 FFT plan for one power-of-two size with unitary normalization:
/// both directions carry 1/sqrt(N), so Parseval holds exactly and Wigner
/// mode variances are size-independent. Forward kernel is e^{-2pi i jk/N}.
/// Plans are immutable after construction and safe to share across threads.
class FftPlan {
public:
  explicit FftPlan(int n);

  int size() const { return n_; }

  /// In-place unitary transform of n contiguous values.
  void forward(std::complex<double>* data) const { transform(data, -1); }
  void inverse(std::complex<double>* data) const { transform(data, +1); }

private:
  void transform(std::complex<double>* data, int sign) const;

  int n_ = 1;
  double scale_ = 1.0;
  std::vector<int> bitrev_;
  std::vector<std::complex<double>> twiddle_; // e^{-2pi i k/n}, k < n/2
};

} // namespace entim

#endif
