#include "sgm/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sgm/norms.hpp"
#include "sgm/spectral.hpp"

namespace sgm {

namespace {

Trajectory derivative_series(const Trajectory& traj) {
  std::vector<GridField> frames;
  frames.reserve(traj.frame_count());
  for (std::size_t i = 0; i < traj.frame_count(); ++i)
    frames.push_back(derivative(traj.frame(i), 1));
  return Trajectory(std::move(frames), std::vector<double>(traj.times()));
}

}  // namespace

double local_Y_from_ux(const Trajectory& ux, const ParabolicCylinder& Q) {
  return cylinder_power_integral(ux, Q, 3.0) / (Q.r * Q.r);
}

double local_Y(const Trajectory& traj, const ParabolicCylinder& Q) {
  return local_Y_from_ux(derivative_series(traj), Q);
}

PoincareResult poincare_residual(const Trajectory& traj,
                                 const ParabolicCylinder& Q,
                                 const PoincareParams& params) {
  double p = 3.0;
  if (params.variant == PoincareVariant::generalized) {
    p = params.p;
    if (p < 2.0 || params.pp < 2.0 || p == kInf || params.pp == kInf)
      throw std::invalid_argument("poincare_residual: need p, p' in [2, inf)");
    const double bal = 1.0 / p + 4.0 / params.pp;
    if (std::abs(bal - (1.0 - params.eps)) > 1e-9)
      throw std::invalid_argument(
          "poincare_residual: exponents must satisfy 1/p + 4/p' = 1 - eps");
  }

  const ParabolicCylinder half = Q.half();
  const double mean = cylinder_mean(traj, half);
  std::vector<GridField> dev;
  dev.reserve(traj.frame_count());
  for (std::size_t i = 0; i < traj.frame_count(); ++i) {
    GridField f = traj.frame(i);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] -= mean;
    dev.push_back(std::move(f));
  }
  const Trajectory centered(std::move(dev), std::vector<double>(traj.times()));
  const double r = Q.r;
  PoincareResult out;
  out.lhs = cylinder_power_integral(centered, half, p) / std::pow(r, 5.0);

  if (params.variant == PoincareVariant::cubic) {
    const double Y = local_Y(traj, Q);
    out.scale = Y;
    out.rhs = Y + Y * Y;
  } else {
    const double M =
        mixed_norm(derivative_series(traj), MixedExponents(params.pp, p), Q);
    out.scale = M;
    const double rm = std::pow(r, params.eps) * M;
    out.rhs = std::pow(rm, p) + std::pow(rm, 2.0 * p);
  }
  if (out.rhs > 0.0)
    out.ratio = out.lhs / out.rhs;
  else
    out.ratio = out.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return out;
}

SerrinReport serrin_monitor(const Trajectory& traj, const MixedExponents& exps,
                            const std::optional<ParabolicCylinder>& window) {
  SerrinReport rep;
  rep.norm = mixed_norm(derivative_series(traj), exps, window);
  rep.crit = criticality(exps);
  return rep;
}

CylinderCensus cylinder_census(const Trajectory& traj, double r, double eps0,
                               std::size_t stride) {
  if (!(r > 0.0)) throw std::invalid_argument("cylinder_census: r > 0");
  if (stride == 0) throw std::invalid_argument("cylinder_census: stride >= 1");
  const double r4 = r * r * r * r;
  const double extent = traj.t_end() - traj.t_begin();
  if (!(r4 < extent))
    throw std::invalid_argument("cylinder_census: r^4 below the time extent");
  if (2.0 * r > traj.period())
    throw std::invalid_argument("cylinder_census: ball wider than the period");
  // lattice centers need not align with frames, so demand two frames worst-case
  if (r4 < 2.0 * traj.dt() * (1.0 - 1e-12))
    throw ResolutionError("cylinder_census: r^4 under-resolved by the frame spacing");

  const Trajectory ux = derivative_series(traj);
  CylinderCensus census;
  census.r = r;
  census.eps0 = eps0;

  const double L = traj.period();
  const double hx = (r / 2.0) * static_cast<double>(stride);
  const double ht = (r4 / 2.0) * static_cast<double>(stride);
  const auto nx = static_cast<std::size_t>(std::floor(L / hx));
  for (double t0 = traj.t_begin() + r4; t0 <= traj.t_end() + 1e-12 * extent;
       t0 += ht) {
    const double tc = std::min(t0, traj.t_end());
    for (std::size_t i = 0; i < nx; ++i) {
      const ParabolicCylinder Q{hx * static_cast<double>(i), tc, r};
      CensusEntry e;
      e.Q = Q;
      e.Y = local_Y_from_ux(ux, Q);
      e.good = e.Y < eps0;
      (e.good ? census.good_count : census.bad_count) += 1;
      census.entries.push_back(e);
    }
    if (tc == traj.t_end()) break;
  }
  return census;
}

std::optional<double> bad_set_slope(const Trajectory& traj, double r_max,
                                    std::size_t levels, double eps0,
                                    std::size_t stride) {
  std::vector<double> lx, ly;
  double r = r_max;
  for (std::size_t l = 0; l < levels; ++l, r /= 2.0) {
    CylinderCensus c;
    try {
      c = cylinder_census(traj, r, eps0, stride);
    } catch (const ResolutionError&) {
      break;  // sweep ends where the frame spacing gives out
    }
    if (c.bad_count == 0) continue;
    lx.push_back(std::log(1.0 / r));
    ly.push_back(std::log(static_cast<double>(c.bad_count)));
  }
  if (lx.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

}  // namespace sgm
