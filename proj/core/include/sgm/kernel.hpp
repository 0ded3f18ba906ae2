#ifndef SGM_KERNEL_HPP
#define SGM_KERNEL_HPP

#include <mutex>
#include <vector>

#include "sgm/field.hpp"

namespace sgm {

/// Evaluation context for the biharmonic heat kernel
///   Phi(x,t) = c t^{-1/4} K(|x| / t^{1/4}),
///   K(r) = \int_0^inf e^{-s^4} cos(r s) ds,
/// its profile derivatives K^(k) (k <= 4) and spatial derivatives of Phi
/// (k <= 3), plus the L^p decay norms and the periodization to the torus.
///
/// Normalization: c = 1/pi gives spatial mass \int Phi(x,t) dx = 1 for all
/// t > 0 (the semigroup / approximate-identity normalization). The kernel
/// changes sign, so ||Phi(t)||_1 is a t-independent constant > 1, reported
/// by l1_constant().
class KernelEval {
 public:
  explicit KernelEval(double s_max = 3.2, double profile_range = 34.0);

  double normalization() const { return c_; }
  double s_max() const { return s_max_; }
  double profile_range() const { return r_max_; }

  /// ||Phi(t)||_1, a t-independent diagnostic constant (> 1).
  double l1_constant() const;

  /// K^(k)(r) by panelled Gauss quadrature; panel width <= pi/(2|r|) so the
  /// oscillation cos(r s) is always resolved. k <= 4.
  double eval_profile(double r, unsigned k) const;

  /// d^k/dx^k Phi(x,t), k <= 3. Throws std::domain_error for t <= 0.
  double eval_kernel(double x, double t, unsigned k) const;

  /// Quadrature value of || d^k/dx^k Phi(t) ||_p over |x| <= profile_range * t^{1/4}.
  double lp_norm(double t, double p, unsigned k) const;

  /// \int Phi(x,t) dx by quadrature (equals 1 up to quadrature error).
  double integral(double t) const;

  /// Image sum  sum_n d^k/dx^k Phi(x + n L, t)  sampled on an N-point grid.
  /// Throws std::runtime_error naming the required image count when the
  /// periodization would need more than 64 images per side.
  GridField periodized(double t, std::size_t n, double period, unsigned k) const;

  /// Same object built from the Fourier side: coefficients
  /// (2 pi i kappa / L)^k e^{-(2 pi kappa / L)^4 t}. Cross-validates periodized().
  GridField periodized_spectral(double t, std::size_t n, double period, unsigned k) const;

 private:
  const std::vector<std::vector<double>>& tables() const;

  double s_max_;
  double r_max_;
  double c_;
  double table_step_ = 0.005;

  mutable std::once_flag table_once_;
  mutable std::vector<std::vector<double>> table_;  // table_[k][i] = K^(k)(i*step)
  mutable double l1_ = 0.0;
};

}  // namespace sgm

#endif
