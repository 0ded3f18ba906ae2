#ifndef SGM_SOLVER_HPP
#define SGM_SOLVER_HPP

#include <complex>
#include <optional>
#include <vector>

#include "sgm/cutoff.hpp"
#include "sgm/field.hpp"

namespace sgm {

enum class Scheme { etdrk4, exp_euler };

struct SolverConfig {
  std::size_t n = 128;
  double period = 1.0;
  double dt = 1e-4;
  double t_final = 1e-2;
  bool dealias = true;
  bool nonlinear = true;          // off = pure biharmonic heat flow
  Scheme scheme = Scheme::etdrk4;
  std::size_t save_every = 1;     // frames kept every this many steps

  void validate() const;
};

/// Blow-up is a signal, not a crash: near-singular runs feed the diagnostics.
struct DivergenceInfo {
  double t_fail = 0.0;
  double max_ux = 0.0;  // of the last finite frame
};

struct SimResult {
  Trajectory trajectory;  // frames up to divergence, if any
  std::optional<DivergenceInfo> divergence;
};

/// -d_xx((d_x u)^2), pseudospectral with the 2/3-rule on the square.
/// Exact divergence form: the output has zero mean.
GridField rhs_nonlinear(const GridField& u, bool dealias = true);

/// One exponential-integrator step of u_t = -u_xxxx + N(u); the linear
/// factor e^{-(2 pi kappa/L)^4 dt} is applied exactly, so there is no
/// linear CFL restriction.
class Stepper {
 public:
  explicit Stepper(const SolverConfig& config);
  GridField step(const GridField& u) const;
  const SolverConfig& config() const { return config_; }

 private:
  SolverConfig config_;
  // per-mode ETD coefficients
  std::vector<double> e_, e2_, q_, f1_, f2_, f3_, phi1_;
};

SimResult simulate(const GridField& u0, const SolverConfig& config);

struct EnergyRecord {
  double t;
  double E;         // 1/2 ||u||_2^2
  double D;         // ||u_xx||_2^2
  double W;         // \int u_xx u_x^2
  double residual;  // |dE/dt + D + W| for the gap ending at this frame
};

std::vector<EnergyRecord> energy_report(const Trajectory& traj);

/// | \int u phi_t - u_xx phi_xx - u_x^2 phi_xx | over the trajectory extent.
/// phi must be supported strictly inside (t_begin, t_end).
double weak_form_residual(const Trajectory& traj, const CutoffFunction& phi);

}  // namespace sgm

#endif
