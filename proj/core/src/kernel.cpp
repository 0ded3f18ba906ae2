#include "sgm/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgm/exponents.hpp"
#include "sgm/fft.hpp"

namespace sgm {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 16;
constexpr double kNodes[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kWeights[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// trig cycle of K^(k): cos, -sin, -cos, sin, cos, ...
double trig(unsigned k, double a) {
  switch (k % 4) {
    case 0: return std::cos(a);
    case 1: return -std::sin(a);
    case 2: return -std::cos(a);
    default: return std::sin(a);
  }
}

constexpr double kOscillationBudget = 2000.0;

}  // namespace

KernelEval::KernelEval(double s_max, double profile_range)
    : s_max_(s_max), r_max_(profile_range), c_(1.0 / std::numbers::pi) {
  if (std::exp(-std::pow(s_max_, 4.0)) >= 1e-16)
    throw std::invalid_argument("KernelEval: s_max truncation above 1e-16");
}

double KernelEval::eval_profile(double r, unsigned k) const {
  if (k > 4) throw std::invalid_argument("eval_profile: k <= 4");
  if (!std::isfinite(r)) throw std::invalid_argument("eval_profile: r not finite");
  const double ra = std::abs(r);
  if (ra > kOscillationBudget)
    throw std::domain_error("eval_profile: |r| beyond oscillation budget");

  // Panel width capped by pi/(2|r|): at most a quarter period of cos(r s)
  // per panel, so fixed-node Gauss stays accurate for large r.
  const double width =
      ra > 1.0 ? std::min(0.2, std::numbers::pi / (2.0 * ra)) : 0.2;
  const int panels = static_cast<int>(std::ceil(s_max_ / width));
  const double h = s_max_ / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    const double half = h / 2.0;
    const double mid = a + half;
    double acc = 0.0;
    for (int i = 0; i < kGL; ++i) {
      const double s = mid + half * kNodes[i];
      const double s2 = s * s;
      double sk = 1.0;
      for (unsigned m = 0; m < k; ++m) sk *= s;
      acc += kWeights[i] * std::exp(-s2 * s2) * sk * trig(k, r * s);
    }
    sum += acc * half;
  }
  return sum;
}

double KernelEval::eval_kernel(double x, double t, unsigned k) const {
  if (!(t > 0.0)) throw std::domain_error("eval_kernel: t must be positive");
  if (k > 3) throw std::invalid_argument("eval_kernel: k <= 3");
  const double t14 = std::pow(t, 0.25);
  return c_ * std::pow(t14, -static_cast<double>(k) - 1.0) *
         eval_profile(x / t14, k);
}

const std::vector<std::vector<double>>& KernelEval::tables() const {
  std::call_once(table_once_, [this] {
    const std::size_t npts = static_cast<std::size_t>(r_max_ / table_step_) + 1;
    table_.assign(5, std::vector<double>(npts));
    for (unsigned k = 0; k <= 4; ++k)
      for (std::size_t i = 0; i < npts; ++i)
        table_[k][i] = eval_profile(i * table_step_, k);
    // ||Phi(t)||_1 is t-independent: 2 c \int_0^inf |K|.
    double s = 0.0;
    const std::size_t last = npts - 1 - (npts - 1) % 2;
    for (std::size_t i = 0; i + 2 <= last; i += 2)
      s += table_step_ / 3.0 *
           (std::abs(table_[0][i]) + 4.0 * std::abs(table_[0][i + 1]) +
            std::abs(table_[0][i + 2]));
    l1_ = 2.0 * c_ * s;
  });
  return table_;
}

double KernelEval::l1_constant() const {
  tables();
  return l1_;
}

double KernelEval::lp_norm(double t, double p, unsigned k) const {
  if (!(t > 0.0)) throw std::domain_error("lp_norm: t must be positive");
  if (k > 3) throw std::invalid_argument("lp_norm: k <= 3");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1");
  const auto& tab = tables();
  const double t14 = std::pow(t, 0.25);
  const double amp = c_ * std::pow(t14, -static_cast<double>(k) - 1.0);
  if (p == kInf) {
    double m = 0.0;
    for (double v : tab[k]) m = std::max(m, std::abs(v));
    return amp * m;
  }
  // Simpson over x = y t^{1/4}, y on the tabulated grid; the substitution
  // makes the quadrature error identical across t.
  const std::size_t npts = tab[k].size();
  const std::size_t last = npts - 1 - (npts - 1) % 2;
  double s = 0.0;
  const double hx = table_step_ * t14;
  for (std::size_t i = 0; i + 2 <= last; i += 2)
    s += hx / 3.0 *
         (std::pow(std::abs(amp * tab[k][i]), p) +
          4.0 * std::pow(std::abs(amp * tab[k][i + 1]), p) +
          std::pow(std::abs(amp * tab[k][i + 2]), p));
  return std::pow(2.0 * s, 1.0 / p);
}

double KernelEval::integral(double t) const {
  if (!(t > 0.0)) throw std::domain_error("integral: t must be positive");
  const auto& tab = tables();
  const double t14 = std::pow(t, 0.25);
  const double amp = c_ / t14;
  const std::size_t npts = tab[0].size();
  const std::size_t last = npts - 1 - (npts - 1) % 2;
  double s = 0.0;
  const double hx = table_step_ * t14;
  for (std::size_t i = 0; i + 2 <= last; i += 2)
    s += hx / 3.0 *
         (amp * tab[0][i] + 4.0 * amp * tab[0][i + 1] + amp * tab[0][i + 2]);
  return 2.0 * s;
}

GridField KernelEval::periodized(double t, std::size_t n, double period,
                                 unsigned k) const {
  if (!(t > 0.0)) throw std::domain_error("periodized: t must be positive");
  const double t14 = std::pow(t, 0.25);
  // Images beyond |x| > r_max t^{1/4} contribute below the profile tail.
  const int m = static_cast<int>(std::ceil(r_max_ * t14 / period)) + 1;
  if (m > 64)
    throw std::runtime_error("periodized: would need " + std::to_string(m) +
                             " images per side; use the spectral construction");
  GridField out = GridField::zeros(n, period);
  const double reach = r_max_ * t14;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = out.x(j);
    double s = 0.0;
    for (int im = -m; im <= m; ++im) {
      const double xi = x + im * period;
      if (std::abs(xi) > reach) continue;
      s += eval_kernel(xi, t, k);
    }
    out[j] = s;
  }
  return out;
}

GridField KernelEval::periodized_spectral(double t, std::size_t n, double period,
                                          unsigned k) const {
  if (!(t > 0.0)) throw std::domain_error("periodized_spectral: t must be positive");
  std::vector<std::complex<double>> coeffs(n);
  SpectralField c(std::move(coeffs), period);
  const double two_pi = 2.0 * std::numbers::pi;
  static const std::complex<double> cyc[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int half = static_cast<int>(n) / 2;
  for (std::size_t j = 0; j < n; ++j) {
    const int kappa = c.wavenumber(j);
    if (kappa == -half && k % 2 == 1) {
      c[j] = 0.0;
      continue;
    }
    const double xi = two_pi * kappa / period;
    double w = 1.0;
    for (unsigned p = 0; p < k; ++p) w *= xi;
    const double decay = std::exp(-xi * xi * xi * xi * t);
    // coefficient convention carries 1/L for the periodization
    c[j] = cyc[k % 4] * (w * decay / period);
  }
  return fft_inverse(c);
}

}  // namespace sgm
