#ifndef SGM_DIAGNOSTICS_HPP
#define SGM_DIAGNOSTICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sgm/cylinder.hpp"
#include "sgm/exponents.hpp"
#include "sgm/field.hpp"

namespace sgm {

/// Y(z,r) = r^{-2} \int_{Q(z,r)} |u_x|^3, u_x spectral per frame.
double local_Y(const Trajectory& traj, const ParabolicCylinder& Q);

/// Same quantity from an already-differentiated trajectory (synthetic u_x
/// profiles, or u_x computed once for a whole census).
double local_Y_from_ux(const Trajectory& ux, const ParabolicCylinder& Q);

enum class PoincareVariant { cubic, generalized };

struct PoincareParams {
  PoincareVariant variant = PoincareVariant::cubic;
  // generalized variant only; must satisfy 1/p + 4/p' = 1 - eps, p, p' in [2, inf)
  double p = 3.0;
  double pp = 3.0;
  double eps = 0.0;
};

struct PoincareResult {
  double lhs = 0.0;    // r^{-5} \int_{Q(z,r/2)} |u - mean|^p
  double scale = 0.0;  // Y(z,r) for cubic; the mixed norm M over Q(z,r) otherwise
  double rhs = 0.0;    // Y + Y^2, or (r^eps M)^p + (r^eps M)^{2p}
  double ratio = 0.0;  // lhs / rhs; 0 if both vanish, inf if only rhs vanishes
};

/// Parabolic Poincare ratio on the half cylinder Q(z, r/2) against the
/// local quantity measured on Q(z,r).
PoincareResult poincare_residual(const Trajectory& traj,
                                 const ParabolicCylinder& Q,
                                 const PoincareParams& params = {});

struct SerrinReport {
  double norm = 0.0;  // ||u_x||_{L^{q',q}} over the window
  Criticality crit{0.0, SerrinClass::subcritical};
};

SerrinReport serrin_monitor(const Trajectory& traj, const MixedExponents& exps,
                            const std::optional<ParabolicCylinder>& window =
                                std::nullopt);

struct CensusEntry {
  ParabolicCylinder Q;
  double Y = 0.0;
  bool good = false;  // Y < eps0
};

struct CylinderCensus {
  double r = 0.0;
  double eps0 = 0.0;
  std::vector<CensusEntry> entries;
  std::size_t good_count = 0;
  std::size_t bad_count = 0;
};

/// Evaluate Y on a lattice of cylinder centers with half-overlap spacing
/// (r/2 in x, r^4/2 in t, thinned by stride) and flag Y < eps0.
CylinderCensus cylinder_census(const Trajectory& traj, double r, double eps0,
                               std::size_t stride = 1);

/// Least-squares slope of log(bad count) against log(1/r) over a dyadic
/// sweep r_max, r_max/2, ..., r_max/2^{levels-1}. Empty when fewer than two
/// radii produce a nonempty bad set (a box-counting-style exponent is then
/// meaningless).
std::optional<double> bad_set_slope(const Trajectory& traj, double r_max,
                                    std::size_t levels, double eps0,
                                    std::size_t stride = 1);

}  // namespace sgm

#endif
