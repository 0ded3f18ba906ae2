#ifndef SGM_TEST_HELPERS_HPP
#define SGM_TEST_HELPERS_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "sgm/field.hpp"

namespace sgmtest {

inline constexpr double kPi = 3.14159265358979323846;

inline sgm::GridField sample(std::size_t n, double L,
                             const std::function<double(double)>& f) {
  sgm::GridField g = sgm::GridField::zeros(n, L);
  for (std::size_t j = 0; j < n; ++j) g[j] = f(g.x(j));
  return g;
}

inline sgm::GridField single_mode(std::size_t n, double L, double amp,
                                  int mode, double phase = 0.0) {
  return sample(n, L, [=](double x) {
    return amp * std::sin(2.0 * kPi * mode * x / L + phase);
  });
}

/// Sample f(x, t) on n points, m frames over [0, T].
inline sgm::Trajectory sample_xt(std::size_t n, std::size_t m, double L,
                                 double T,
                                 const std::function<double(double, double)>& f) {
  std::vector<sgm::GridField> frames;
  std::vector<double> times;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(m - 1);
    frames.push_back(sample(n, L, [&](double x) { return f(x, t); }));
    times.push_back(t);
  }
  return sgm::Trajectory(std::move(frames), std::move(times));
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace sgmtest

#endif
