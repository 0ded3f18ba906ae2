#ifndef SGM_NORMS_HPP
#define SGM_NORMS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sgm/cylinder.hpp"
#include "sgm/exponents.hpp"
#include "sgm/field.hpp"

namespace sgm {

/// Raised when a quadrature window contains too few frames.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid indices and quadrature weights covering a cylinder (or everything).
struct SampleWindow {
  std::vector<std::size_t> space_idx;   // grid columns inside B(x0, r)
  std::size_t t_first = 0;              // first frame index in the window
  std::size_t t_last = 0;               // last frame index (inclusive)
};

/// Resolve Q against the trajectory grid. Throws std::domain_error if the
/// cylinder sticks out of the trajectory's space-time extent, ResolutionError
/// if fewer than 2 frames fall inside the time interval.
SampleWindow resolve_window(const Trajectory& traj,
                            const std::optional<ParabolicCylinder>& Q);

/// Discrete L^{q'}L^q norm over Q (trapezoid in time, Riemann in space,
/// grid max for an infinite exponent). Empty Q marker means the whole domain.
double mixed_norm(const Trajectory& traj, const MixedExponents& exps,
                  const std::optional<ParabolicCylinder>& Q = std::nullopt);

/// Spatial L^q norm of a single frame over the given columns.
double spatial_norm(const GridField& f, double q,
                    const std::vector<std::size_t>& cols);

/// Sub-trajectory sampled on Q, preserving grid spacing. The restricted
/// frames carry the window length as their period.
Trajectory restrict(const Trajectory& traj, const ParabolicCylinder& Q);

/// Quadrature of |g|^p over Q with the same trapezoid-in-time,
/// Riemann-in-space weights used by mixed_norm.
double cylinder_power_integral(const Trajectory& g,
                               const std::optional<ParabolicCylinder>& Q,
                               double p);

/// Quadrature-weighted mean of g over Q.
double cylinder_mean(const Trajectory& g,
                     const std::optional<ParabolicCylinder>& Q);

}  // namespace sgm

#endif
