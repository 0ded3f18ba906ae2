#include "sgm/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace sgm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

GridField derivative(const GridField& f, unsigned k) {
  if (k == 0) return f;
  SpectralField c = fft_forward(f);
  const double L = f.period();
  const int n = static_cast<int>(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const int kappa = c.wavenumber(j);
    if (kappa == -n / 2 && k % 2 == 1) {
      c[j] = 0.0;
      continue;
    }
    double w = 1.0;
    const double base = kTwoPi * kappa / L;
    for (unsigned p = 0; p < k; ++p) w *= base;
    // (i w)^k = i^k w^k with i^k cycling 1, i, -1, -i
    static const std::complex<double> cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    c[j] *= cycle[k % 4] * w;
  }
  return fft_inverse(c);
}

GridField fractional(const GridField& f, double s) {
  if (s < 0.0) throw std::invalid_argument("fractional: s must be >= 0");
  if (s == 0.0) return f;
  SpectralField c = fft_forward(f);
  const double L = f.period();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const int kappa = c.wavenumber(j);
    c[j] *= kappa == 0 ? 0.0 : std::pow(std::abs(kappa / L), s);
  }
  return fft_inverse(c);
}

double l2_norm(const GridField& f) {
  SpectralField c = fft_forward(f);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += std::norm(c[j]);
  return std::sqrt(s * f.period());
}

double hs_norm(const GridField& f, double s) {
  SpectralField c = fft_forward(f);
  const double L = f.period();
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double xi = std::abs(c.wavenumber(j) / L);
    acc += (1.0 + std::pow(xi, 2.0 * s)) * std::norm(c[j]);
  }
  return std::sqrt(acc * L);
}

namespace {

double slobodeckij_sum(const GridField& f, double s,
                       const std::optional<std::pair<double, double>>& window,
                       bool include_l2) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("slobodeckij: s must lie in (0,1)");
  const double L = f.period();
  const double dx = f.dx();
  const std::size_t n = f.size();

  std::vector<std::size_t> idx;
  if (window) {
    const auto [a, b] = *window;
    if (b - a > L * (1.0 + 1e-12))
      throw std::invalid_argument("slobodeckij: window longer than the period");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::remainder(f.x(j) - a, L);
      const double off = d < 0.0 ? d + L : d;
      if (off < b - a - 1e-9 * dx) idx.push_back(j);
    }
  } else {
    idx.resize(n);
    for (std::size_t j = 0; j < n; ++j) idx[j] = j;
  }

  double sum = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (a == b) continue;
      double dist;
      if (window) {
        dist = std::abs(f.x(idx[a]) - f.x(idx[b]));
      } else {
        dist = std::abs(std::remainder(f.x(idx[a]) - f.x(idx[b]), L));
      }
      if (dist < dx * (1.0 - 1e-12)) continue;  // diagonal cells excluded
      const double diff = f[idx[a]] - f[idx[b]];
      sum += diff * diff / std::pow(dist, 1.0 + 2.0 * s) * dx * dx;
    }
  }
  if (include_l2)
    for (std::size_t j : idx) sum += f[j] * f[j] * dx;
  return std::sqrt(sum);
}

}  // namespace

double slobodeckij_norm(const GridField& f, double s,
                        std::optional<std::pair<double, double>> window) {
  return slobodeckij_sum(f, s, window, true);
}

double slobodeckij_seminorm(const GridField& f, double s,
                            std::optional<std::pair<double, double>> window) {
  return slobodeckij_sum(f, s, window, false);
}

GridField convolve(const GridField& f, const GridField& g) {
  if (f.size() != g.size() || f.period() != g.period())
    throw std::invalid_argument("convolve: shape mismatch");
  SpectralField cf = fft_forward(f);
  SpectralField cg = fft_forward(g);
  for (std::size_t j = 0; j < cf.size(); ++j) cf[j] *= cg[j] * f.period();
  return fft_inverse(cf);
}

}  // namespace sgm
