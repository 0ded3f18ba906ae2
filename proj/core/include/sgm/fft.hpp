#ifndef SGM_FFT_HPP
#define SGM_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "sgm/field.hpp"

namespace sgm {

/// Fourier coefficients of a periodic field, normalized so that
/// c(kappa) ~ (1/L) \int_0^L f(x) e^{-2 pi i kappa x / L} dx.
/// Storage follows FFT order: kappa = 0, 1, ..., N/2-1, -N/2, ..., -1.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(std::vector<std::complex<double>> coeffs, double period);

  std::size_t size() const { return coeffs_.size(); }
  double period() const { return period_; }

  /// Signed wavenumber of storage slot j.
  int wavenumber(std::size_t j) const {
    const int n = static_cast<int>(coeffs_.size());
    const int k = static_cast<int>(j);
    return k < n / 2 ? k : k - n;
  }

  std::complex<double>& operator[](std::size_t j) { return coeffs_[j]; }
  const std::complex<double>& operator[](std::size_t j) const { return coeffs_[j]; }
  std::vector<std::complex<double>>& coeffs() { return coeffs_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

 private:
  std::vector<std::complex<double>> coeffs_;
  double period_ = 1.0;
};

/// Forward transform; requires N >= 8 and N even.
SpectralField fft_forward(const GridField& f);

/// Inverse transform, discarding the (round-off level) imaginary part.
GridField fft_inverse(const SpectralField& c);

}  // namespace sgm

#endif
