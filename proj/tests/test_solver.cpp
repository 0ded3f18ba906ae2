#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sgm/solver.hpp"
#include "sgm/spectral.hpp"

using namespace sgm;
using namespace sgmtest;

namespace {

const double L = 2.0 * kPi;  // makes the lowest-mode decay rate exactly 1

SolverConfig base_config() {
  SolverConfig c;
  c.n = 64;
  c.period = L;
  c.dt = 1e-3;
  c.t_final = 0.1;
  c.save_every = 10;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig c = base_config();
  c.n = 6;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_config();
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_config();
  c.dt = 1.0;  // > t_final
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(simulate(single_mode(64, L, 0.1, 1), [] {
                    SolverConfig bad = base_config();
                    bad.n = 32;
                    return bad;
                  }()),
                  std::invalid_argument);
  // nonzero mean rejected
  GridField shifted = single_mode(64, L, 0.1, 1);
  for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] += 1.0;
  CHECK_THROWS_AS(simulate(shifted, base_config()), std::invalid_argument);
}

TEST_CASE("pure biharmonic flow decays each mode exactly") {
  SolverConfig c = base_config();
  c.nonlinear = false;
  const double amp = 0.7;
  const auto res = simulate(single_mode(c.n, L, amp, 1), c);
  REQUIRE(!res.divergence);
  const Trajectory& tr = res.trajectory;
  const GridField want = single_mode(c.n, L, amp * std::exp(-tr.t_end()), 1);
  CHECK((tr.frame(tr.frame_count() - 1) - want).max_abs() <
        1e-9 * amp * std::exp(-tr.t_end()));
  // mode 2 decays at rate 16
  const auto res2 = simulate(single_mode(c.n, L, amp, 2), c);
  const GridField want2 =
      single_mode(c.n, L, amp * std::exp(-16.0 * tr.t_end()), 2);
  CHECK((res2.trajectory.frame(tr.frame_count() - 1) - want2).max_abs() <
        1e-9 * amp);
}

TEST_CASE("nonlinear term is a clean double divergence") {
  const GridField u = single_mode(64, L, 0.3, 1) + single_mode(64, L, 0.2, 3);
  const GridField n = rhs_nonlinear(u);
  CHECK(n.is_zero_mean());
  // oracle: -d_xx((u_x)^2) assembled from exact derivatives of the two modes
  GridField ux = derivative(u, 1);
  const GridField want = -1.0 * derivative(pointwise(ux, ux), 2);
  // dealiased version differs only in modes above 2N/3, absent for this u
  CHECK((n - want).max_abs() < 1e-11);
}

TEST_CASE("mean stays pinned at zero") {
  SolverConfig c = base_config();
  c.save_every = 20;
  const auto res = simulate(single_mode(c.n, L, 0.5, 1), c);
  for (std::size_t i = 0; i < res.trajectory.frame_count(); ++i)
    CHECK(std::abs(res.trajectory.frame(i).mean()) < 1e-12);
}

TEST_CASE("fourth-order convergence in dt") {
  SolverConfig fine = base_config();
  fine.t_final = 0.05;
  fine.dt = 3.125e-5;
  fine.save_every = 1600;  // keep only the endpoints
  const GridField u0 = single_mode(fine.n, L, 0.5, 1);
  const auto ref = simulate(u0, fine);
  const GridField uref =
      ref.trajectory.frame(ref.trajectory.frame_count() - 1);

  std::vector<double> errs;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    SolverConfig c = fine;
    c.dt = dt;
    c.save_every = static_cast<std::size_t>(std::llround(c.t_final / dt));
    const auto res = simulate(u0, c);
    errs.push_back(
        (res.trajectory.frame(res.trajectory.frame_count() - 1) - uref)
            .max_abs());
  }
  CHECK(errs[0] / errs[1] >= 8.0);
  CHECK(errs[1] / errs[2] >= 8.0);
}

TEST_CASE("energy identity: dE/dt = -D - W up to O(dt^2)") {
  SolverConfig c = base_config();
  c.dt = 2.5e-4;
  c.save_every = 1;
  const auto res = simulate(single_mode(c.n, L, 0.05, 1), c);
  const auto recs = energy_report(res.trajectory);
  double max_D = 0.0, max_res = 0.0;
  for (const auto& r : recs) {
    max_D = std::max(max_D, r.D);
    max_res = std::max(max_res, r.residual);
  }
  CHECK(max_res < 1e-6 * max_D);
  // E decreases for small data (W is dominated by D)
  CHECK(recs.back().E < recs.front().E);
}

TEST_CASE("weak form residual shrinks >= 4x per joint refinement level") {
  // joint refinement: double the grid, halve the frame spacing. Refining the
  // frames alone saturates at the spatial discretization error.
  const CutoffFunction phi(L, L / 2.0, L / 8.0, L / 4.0, 0.02, 0.18, 0.04);
  std::vector<double> residuals;
  for (std::size_t n : {64, 128, 256}) {
    SolverConfig cc = base_config();
    cc.n = n;
    cc.dt = 1.25e-4;
    cc.t_final = 0.2;
    cc.save_every = 1024 / n;
    const auto res = simulate(single_mode(n, L, 0.4, 1), cc);
    residuals.push_back(weak_form_residual(res.trajectory, phi));
  }
  CHECK(residuals[0] / residuals[1] >= 4.0);
  CHECK(residuals[1] / residuals[2] >= 4.0);

  // test function support must fit the extent
  const CutoffFunction wide(L, L / 2.0, L / 8.0, L / 4.0, -0.5, 0.18, 0.04);
  SolverConfig cc = base_config();
  cc.dt = 1.25e-4;
  cc.t_final = 0.2;
  cc.save_every = 32;
  const auto res = simulate(single_mode(cc.n, L, 0.4, 1), cc);
  CHECK_THROWS_AS(weak_form_residual(res.trajectory, wide), std::domain_error);
}

TEST_CASE("divergence is reported, not thrown") {
  SolverConfig c = base_config();
  c.n = 32;
  c.dt = 5e-2;
  c.t_final = 5.0;
  c.scheme = Scheme::exp_euler;
  c.dealias = false;
  const auto res = simulate(single_mode(c.n, L, 80.0, 3), c);
  REQUIRE(res.divergence.has_value());
  CHECK(res.divergence->t_fail > 0.0);
  CHECK(res.divergence->max_ux > 0.0);
  CHECK(res.trajectory.frame_count() >= 1);
  for (std::size_t i = 0; i < res.trajectory.frame_count(); ++i)
    CHECK(res.trajectory.frame(i).finite());
}
