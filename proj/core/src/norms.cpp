#include "sgm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgm {

namespace {

// Periodic offset of x relative to x0, in [-L/2, L/2).
double wrap_offset(double x, double x0, double L) {
  double d = std::remainder(x - x0, L);
  if (d >= L / 2.0) d -= L;
  return d;
}

// Trapezoid weight of frame i within [first, last].
double time_weight(const Trajectory& traj, std::size_t i, std::size_t first,
                   std::size_t last) {
  const double h = traj.dt();
  if (first == last) return 0.0;
  return (i == first || i == last) ? h / 2.0 : h;
}

}  // namespace

SampleWindow resolve_window(const Trajectory& traj,
                            const std::optional<ParabolicCylinder>& Q) {
  SampleWindow w;
  const std::size_t n = traj.grid_size();
  const std::size_t m = traj.frame_count();
  if (!Q) {
    w.space_idx.resize(n);
    for (std::size_t j = 0; j < n; ++j) w.space_idx[j] = j;
    w.t_first = 0;
    w.t_last = m - 1;
    if (m < 2) throw ResolutionError("mixed_norm: need at least 2 frames");
    return w;
  }

  const double L = traj.period();
  if (2.0 * Q->r > L * (1.0 + 1e-12))
    throw std::domain_error("cylinder: spatial ball does not fit in one period");

  const double tol_t = 1e-9 * traj.dt();
  if (Q->t_bottom() < traj.t_begin() - tol_t || Q->t0 > traj.t_end() + tol_t)
    throw std::domain_error("cylinder: time interval outside trajectory extent");

  // Half-open spatial window [x0 - r, x0 + r); exact for grid-aligned radii.
  const double dx = traj.frame(0).dx();
  const double tol_x = 1e-9 * dx;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = wrap_offset(traj.frame(0).x(j), Q->x0, L);
    if (d >= -Q->r - tol_x && d < Q->r - tol_x) w.space_idx.push_back(j);
  }
  if (w.space_idx.empty())
    throw ResolutionError("cylinder: no grid points inside the spatial ball");
  // Order columns left-to-right across the (possibly wrapped) window.
  std::sort(w.space_idx.begin(), w.space_idx.end(),
            [&](std::size_t a, std::size_t b) {
              return wrap_offset(traj.frame(0).x(a), Q->x0, L) <
                     wrap_offset(traj.frame(0).x(b), Q->x0, L);
            });

  bool found = false;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = traj.time(i);
    if (t >= Q->t_bottom() - tol_t && t <= Q->t0 + tol_t) {
      if (!found) {
        w.t_first = i;
        found = true;
      }
      w.t_last = i;
    }
  }
  if (!found || w.t_last - w.t_first < 1)
    throw ResolutionError("cylinder: fewer than 2 frames in the time interval");
  return w;
}

double spatial_norm(const GridField& f, double q,
                    const std::vector<std::size_t>& cols) {
  if (q == kInf) {
    double m = 0.0;
    for (std::size_t j : cols) m = std::max(m, std::abs(f[j]));
    return m;
  }
  double s = 0.0;
  for (std::size_t j : cols) s += std::pow(std::abs(f[j]), q);
  return std::pow(s * f.dx(), 1.0 / q);
}

double mixed_norm(const Trajectory& traj, const MixedExponents& exps,
                  const std::optional<ParabolicCylinder>& Q) {
  const SampleWindow w = resolve_window(traj, Q);
  const double qp = exps.time();
  if (qp == kInf) {
    double m = 0.0;
    for (std::size_t i = w.t_first; i <= w.t_last; ++i)
      m = std::max(m, spatial_norm(traj.frame(i), exps.space(), w.space_idx));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = w.t_first; i <= w.t_last; ++i) {
    const double h = spatial_norm(traj.frame(i), exps.space(), w.space_idx);
    s += time_weight(traj, i, w.t_first, w.t_last) * std::pow(h, qp);
  }
  return std::pow(s, 1.0 / qp);
}

Trajectory restrict(const Trajectory& traj, const ParabolicCylinder& Q) {
  const SampleWindow w = resolve_window(traj, Q);
  const double dx = traj.frame(0).dx();
  std::vector<GridField> frames;
  std::vector<double> times;
  frames.reserve(w.t_last - w.t_first + 1);
  const double window_len = dx * static_cast<double>(w.space_idx.size());
  for (std::size_t i = w.t_first; i <= w.t_last; ++i) {
    std::vector<double> vals;
    vals.reserve(w.space_idx.size());
    for (std::size_t j : w.space_idx) vals.push_back(traj.frame(i)[j]);
    frames.emplace_back(std::move(vals), window_len);
    times.push_back(traj.time(i));
  }
  return Trajectory(std::move(frames), std::move(times));
}

double cylinder_power_integral(const Trajectory& g,
                               const std::optional<ParabolicCylinder>& Q,
                               double p) {
  const SampleWindow w = resolve_window(g, Q);
  const double dx = g.frame(0).dx();
  double s = 0.0;
  for (std::size_t i = w.t_first; i <= w.t_last; ++i) {
    double row = 0.0;
    for (std::size_t j : w.space_idx) row += std::pow(std::abs(g.frame(i)[j]), p);
    s += time_weight(g, i, w.t_first, w.t_last) * row * dx;
  }
  return s;
}

double cylinder_mean(const Trajectory& g,
                     const std::optional<ParabolicCylinder>& Q) {
  const SampleWindow w = resolve_window(g, Q);
  const double dx = g.frame(0).dx();
  double s = 0.0, vol = 0.0;
  for (std::size_t i = w.t_first; i <= w.t_last; ++i) {
    const double wt = time_weight(g, i, w.t_first, w.t_last);
    for (std::size_t j : w.space_idx) {
      s += wt * dx * g.frame(i)[j];
      vol += wt * dx;
    }
  }
  return s / vol;
}

}  // namespace sgm
