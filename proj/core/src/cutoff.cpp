#include "sgm/cutoff.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sgm {

namespace {

// Truncated Taylor series (order 4) in one variable; coeff[k] = f^(k)/k!.
struct Jet {
  std::array<double, 5> a{};

  static Jet constant(double v) {
    Jet j;
    j.a[0] = v;
    return j;
  }
  static Jet variable(double v) {
    Jet j;
    j.a[0] = v;
    j.a[1] = 1.0;
    return j;
  }
  double deriv(unsigned k) const {
    static const double fact[5] = {1, 1, 2, 6, 24};
    return a[k] * fact[k];
  }
};

Jet operator+(const Jet& x, const Jet& y) {
  Jet r;
  for (int i = 0; i < 5; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

Jet operator*(const Jet& x, const Jet& y) {
  Jet r;
  for (int n = 0; n < 5; ++n)
    for (int k = 0; k <= n; ++k) r.a[n] += x.a[k] * y.a[n - k];
  return r;
}

Jet operator*(double c, const Jet& x) {
  Jet r;
  for (int i = 0; i < 5; ++i) r.a[i] = c * x.a[i];
  return r;
}

Jet recip(const Jet& x) {
  Jet r;
  r.a[0] = 1.0 / x.a[0];
  for (int n = 1; n < 5; ++n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += r.a[k] * x.a[n - k];
    r.a[n] = -s / x.a[0];
  }
  return r;
}

Jet exp(const Jet& x) {
  Jet r;
  r.a[0] = std::exp(x.a[0]);
  for (int n = 1; n < 5; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * x.a[k] * r.a[n - k];
    r.a[n] = s / n;
  }
  return r;
}

// psi(s) = e^{-1/s} for s > 0, identically 0 for s <= 0.
Jet psi(const Jet& s) {
  if (s.a[0] <= 0.0) return Jet{};
  return exp(-1.0 * recip(s));
}

// Smoothstep g: 0 for s <= 0, 1 for s >= 1, C^inf in between.
Jet smoothstep(const Jet& s) {
  if (s.a[0] <= 0.0) return Jet{};
  if (s.a[0] >= 1.0) return Jet::constant(1.0);
  const Jet p = psi(s);
  const Jet q = psi(Jet::constant(1.0) + (-1.0 * s));
  return p * recip(p + q);
}

}  // namespace

CutoffFunction::CutoffFunction(double period, double x0, double r_inner,
                               double r_outer, double t_lo, double t_hi,
                               double t_ramp)
    : period_(period), x0_(x0), r_in_(r_inner), r_out_(r_outer),
      t_lo_(t_lo), t_hi_(t_hi), ramp_(t_ramp) {
  if (!(0.0 < r_inner && r_inner < r_outer && 2.0 * r_outer <= period))
    throw std::invalid_argument("CutoffFunction: need 0 < r_in < r_out <= L/2");
  if (!(t_lo < t_hi && t_ramp > 0.0 && 2.0 * t_ramp <= t_hi - t_lo))
    throw std::invalid_argument("CutoffFunction: bad time support");
}

double CutoffFunction::space(double x, unsigned k) const {
  if (k > 4) throw std::invalid_argument("CutoffFunction::space: k <= 4");
  double d = std::remainder(x - x0_, period_);
  const double sign = d < 0.0 ? -1.0 : 1.0;
  d = std::abs(d);
  // profile in |d|: 1 on [0, r_in], transition on (r_in, r_out), 0 beyond
  const Jet dj = Jet::variable(d);
  const double w = r_out_ - r_in_;
  const Jet s = (1.0 / w) * (Jet::constant(r_out_) + (-1.0 * dj));
  const Jet g = smoothstep(s);
  // chain rule for the |.| fold: multiply odd derivatives by sign
  double v = g.deriv(k);
  if (k % 2 == 1) v *= sign;
  return v;
}

double CutoffFunction::time(double t, unsigned k) const {
  if (k > 1) throw std::invalid_argument("CutoffFunction::time: k <= 1");
  const Jet tj = Jet::variable(t);
  const Jet up = smoothstep((1.0 / ramp_) * (tj + Jet::constant(-t_lo_)));
  const Jet down = smoothstep((1.0 / ramp_) * (Jet::constant(t_hi_) + (-1.0 * tj)));
  return (up * down).deriv(k);
}

GridField CutoffFunction::sample_space(const GridField& like, unsigned k) const {
  GridField out = GridField::zeros(like.size(), like.period());
  for (std::size_t j = 0; j < like.size(); ++j) out[j] = space(like.x(j), k);
  return out;
}

}  // namespace sgm
