#ifndef SGM_CUTOFF_HPP
#define SGM_CUTOFF_HPP

#include "sgm/field.hpp"

namespace sgm {

/// Tensor-product smooth space-time bump phi(x,t) = X(x) T(t):
///  - X lives on the torus of period L, equals 1 for wrapped |x - x0| <= r_in,
///    vanishes for |x - x0| >= r_out, with C^inf transitions built from
///    exp(-1/s);
///  - T equals 1 on [t_lo + ramp, t_hi - ramp] and vanishes outside [t_lo, t_hi].
/// Spatial derivatives up to order 4 and the time derivative are analytic
/// (truncated-Taylor arithmetic), so no finite differencing enters the
/// localized source terms.
class CutoffFunction {
 public:
  CutoffFunction(double period, double x0, double r_inner, double r_outer,
                 double t_lo, double t_hi, double t_ramp);

  /// X^(k)(x), k <= 4.
  double space(double x, unsigned k) const;
  /// T^(k)(t), k <= 1.
  double time(double t, unsigned k) const;

  double operator()(double x, double t) const { return space(x, 0) * time(t, 0); }
  /// d^k/dx^k phi
  double dx(double x, double t, unsigned k) const { return space(x, k) * time(t, 0); }
  /// d/dt phi
  double dt(double x, double t) const { return space(x, 0) * time(t, 1); }

  double period() const { return period_; }
  double x_center() const { return x0_; }
  double r_inner() const { return r_in_; }
  double r_outer() const { return r_out_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  double t_ramp() const { return ramp_; }

  /// Sample X^(k) on the grid of a reference field.
  GridField sample_space(const GridField& like, unsigned k) const;

 private:
  double period_, x0_, r_in_, r_out_;
  double t_lo_, t_hi_, ramp_;
};

}  // namespace sgm

#endif
