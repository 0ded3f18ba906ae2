#ifndef SGM_CHECKPOINT_HPP
#define SGM_CHECKPOINT_HPP

#include <iosfwd>
#include <string>

#include "sgm/field.hpp"

namespace sgm {

/// Trajectory checkpoint: CSV frames behind a commented header carrying
/// N, L, dt and the writer's config hash. Stable format so diagnostics can
/// run on saved data.
///
///   # sgm-trajectory v1
///   # config_hash=<hex64>
///   # N=<n> L=<L> dt=<dt> frames=<m>
///   t,u0,u1,...
///   <time>,<sample>,...
void save_trajectory(std::ostream& out, const Trajectory& traj,
                     const std::string& config_hash = "0");
void save_trajectory_file(const std::string& path, const Trajectory& traj,
                          const std::string& config_hash = "0");

Trajectory load_trajectory(std::istream& in);
Trajectory load_trajectory_file(const std::string& path);

/// Deterministic %.17g rendering used by every CSV/JSON writer.
std::string format_double(double v);

}  // namespace sgm

#endif
