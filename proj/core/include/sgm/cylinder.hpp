#ifndef SGM_CYLINDER_HPP
#define SGM_CYLINDER_HPP

#include <stdexcept>

namespace sgm {

/// Space-time cylinder Q(z,r) = B(x0,r) x (t0 - r^4, t0).
/// The time height r^4 matches the fourth-order parabolic scaling
/// u(x,t) -> u(lambda x, lambda^4 t).
struct ParabolicCylinder {
  double x0 = 0.0;
  double t0 = 0.0;
  double r = 0.0;

  ParabolicCylinder() = default;
  ParabolicCylinder(double center, double top_time, double radius)
      : x0(center), t0(top_time), r(radius) {
    if (!(r > 0.0)) throw std::invalid_argument("ParabolicCylinder: radius must be positive");
  }

  double r4() const { return r * r * r * r; }
  double t_bottom() const { return t0 - r4(); }

  /// Q(x0, t0, r/2): same top time, half the radius.
  ParabolicCylinder half() const { return {x0, t0, r / 2.0}; }
};

}  // namespace sgm

#endif
