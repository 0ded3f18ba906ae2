#include "sgm/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgm/fft.hpp"
#include "sgm/spectral.hpp"

namespace sgm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void dealias_23(SpectralField& c) {
  const int n = static_cast<int>(c.size());
  const int cut = n / 3;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (std::abs(c.wavenumber(j)) > cut) c[j] = 0.0;
}

// Mean over a contour circle around z of radius 1, for the phi-type ETD
// coefficients (Kassam & Trefethen); avoids cancellation near z = 0.
template <typename F>
double contour_mean(double z, F f) {
  constexpr int M = 32;
  std::complex<double> acc = 0.0;
  for (int m = 0; m < M; ++m) {
    const double th = std::numbers::pi * (m + 0.5) / M;
    const std::complex<double> zz =
        z + std::complex<double>(std::cos(th), std::sin(th));
    acc += f(zz);
  }
  return acc.real() / M;  // conjugate half-circle contributes the same real part
}

}  // namespace

void SolverConfig::validate() const {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("SolverConfig: n even, >= 8");
  if (!(period > 0.0)) throw std::invalid_argument("SolverConfig: period > 0");
  if (!(dt > 0.0 && t_final > 0.0 && dt <= t_final))
    throw std::invalid_argument("SolverConfig: need 0 < dt <= t_final");
  if (save_every == 0) throw std::invalid_argument("SolverConfig: save_every >= 1");
}

GridField rhs_nonlinear(const GridField& u, bool dealias) {
  SpectralField c = fft_forward(u);
  const double L = u.period();
  const int n = static_cast<int>(c.size());
  // v = u_x in coefficient space
  SpectralField cv = c;
  for (std::size_t j = 0; j < cv.size(); ++j) {
    const int kappa = cv.wavenumber(j);
    if (kappa == -n / 2) {
      cv[j] = 0.0;
      continue;
    }
    cv[j] *= std::complex<double>(0.0, kTwoPi * kappa / L);
  }
  if (dealias) dealias_23(cv);
  GridField v = fft_inverse(cv);
  // square in physical space, then -d_xx back in coefficient space
  GridField v2 = pointwise(v, v);
  SpectralField cw = fft_forward(v2);
  if (dealias) dealias_23(cw);
  for (std::size_t j = 0; j < cw.size(); ++j) {
    const double xi = kTwoPi * cw.wavenumber(j) / L;
    cw[j] *= xi * xi;  // -(i xi)^2 = xi^2
  }
  cw[0] = 0.0;
  return fft_inverse(cw);
}

Stepper::Stepper(const SolverConfig& config) : config_(config) {
  config_.validate();
  const std::size_t n = config_.n;
  const double h = config_.dt;
  e_.resize(n);
  e2_.resize(n);
  q_.resize(n);
  f1_.resize(n);
  f2_.resize(n);
  f3_.resize(n);
  phi1_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int kappa = j < n / 2 ? static_cast<int>(j)
                                : static_cast<int>(j) - static_cast<int>(n);
    const double xi = kTwoPi * kappa / config_.period;
    const double lam = -(xi * xi) * (xi * xi);
    const double z = h * lam;
    e_[j] = std::exp(z);
    e2_[j] = std::exp(z / 2.0);
    q_[j] = h / 2.0 * contour_mean(z / 2.0, [](std::complex<double> t) {
      return (std::exp(t) - 1.0) / t;
    });
    f1_[j] = h * contour_mean(z, [](std::complex<double> t) {
      return (-4.0 - t + std::exp(t) * (4.0 - 3.0 * t + t * t)) / (t * t * t);
    });
    f2_[j] = h * contour_mean(z, [](std::complex<double> t) {
      return (2.0 + t + std::exp(t) * (-2.0 + t)) / (t * t * t);
    });
    f3_[j] = h * contour_mean(z, [](std::complex<double> t) {
      return (-4.0 - 3.0 * t - t * t + std::exp(t) * (4.0 - t)) / (t * t * t);
    });
    phi1_[j] = h * contour_mean(z, [](std::complex<double> t) {
      return (std::exp(t) - 1.0) / t;
    });
  }
}

GridField Stepper::step(const GridField& u) const {
  const auto N = [&](const GridField& f) -> SpectralField {
    if (!config_.nonlinear) {
      SpectralField z = fft_forward(f);
      for (auto& c : z.coeffs()) c = 0.0;
      return z;
    }
    return fft_forward(rhs_nonlinear(f, config_.dealias));
  };
  SpectralField cu = fft_forward(u);

  if (config_.scheme == Scheme::exp_euler) {
    SpectralField nu = N(u);
    for (std::size_t j = 0; j < cu.size(); ++j)
      cu[j] = e_[j] * cu[j] + phi1_[j] * nu[j];
    cu[0] = 0.0;  // mean stays pinned at zero
    return fft_inverse(cu);
  }

  // ETDRK4 (Cox-Matthews, Kassam-Trefethen coefficients)
  SpectralField nu = N(u);
  SpectralField a = cu;
  for (std::size_t j = 0; j < a.size(); ++j)
    a[j] = e2_[j] * cu[j] + q_[j] * nu[j];
  SpectralField na = N(fft_inverse(a));
  SpectralField b = cu;
  for (std::size_t j = 0; j < b.size(); ++j)
    b[j] = e2_[j] * cu[j] + q_[j] * na[j];
  SpectralField nb = N(fft_inverse(b));
  SpectralField cc = a;
  for (std::size_t j = 0; j < cc.size(); ++j)
    cc[j] = e2_[j] * a[j] + q_[j] * (2.0 * nb[j] - nu[j]);
  SpectralField nc = N(fft_inverse(cc));
  for (std::size_t j = 0; j < cu.size(); ++j)
    cu[j] = e_[j] * cu[j] + f1_[j] * nu[j] + 2.0 * f2_[j] * (na[j] + nb[j]) +
            f3_[j] * nc[j];
  cu[0] = 0.0;
  return fft_inverse(cu);
}

SimResult simulate(const GridField& u0, const SolverConfig& config) {
  config.validate();
  if (u0.size() != config.n || u0.period() != config.period)
    throw std::invalid_argument("simulate: u0 does not match config grid");
  if (!u0.is_zero_mean())
    throw std::invalid_argument("simulate: u0 must have zero mean");

  Stepper stepper(config);
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(config.t_final / config.dt));

  std::vector<GridField> frames{u0};
  std::vector<double> times{0.0};
  GridField u = u0;
  std::optional<DivergenceInfo> div;
  for (std::size_t s = 1; s <= steps; ++s) {
    GridField next = stepper.step(u);
    if (!next.finite()) {
      div = DivergenceInfo{static_cast<double>(s) * config.dt,
                           derivative(u, 1).max_abs()};
      break;
    }
    u = std::move(next);
    if (s % config.save_every == 0) {
      frames.push_back(u);
      times.push_back(static_cast<double>(s) * config.dt);
    }
  }
  return SimResult{Trajectory(std::move(frames), std::move(times)), div};
}

std::vector<EnergyRecord> energy_report(const Trajectory& traj) {
  const std::size_t m = traj.frame_count();
  if (m < 3) throw std::invalid_argument("energy_report: need >= 3 frames");
  const double dx = traj.frame(0).dx();
  std::vector<EnergyRecord> recs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const GridField& u = traj.frame(i);
    const GridField ux = derivative(u, 1);
    const GridField uxx = derivative(u, 2);
    double E = 0.0, D = 0.0, W = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      E += 0.5 * u[j] * u[j] * dx;
      D += uxx[j] * uxx[j] * dx;
      W += uxx[j] * ux[j] * ux[j] * dx;
    }
    recs[i] = {traj.time(i), E, D, W, 0.0};
  }
  const double h = traj.dt();
  for (std::size_t i = 1; i < m; ++i) {
    const double dEdt = (recs[i].E - recs[i - 1].E) / h;
    const double mid_DW = 0.5 * (recs[i].D + recs[i].W + recs[i - 1].D + recs[i - 1].W);
    recs[i].residual = std::abs(dEdt + mid_DW);
  }
  return recs;
}

double weak_form_residual(const Trajectory& traj, const CutoffFunction& phi) {
  const double tol = 1e-12 * std::max(1.0, traj.t_end());
  if (phi.t_lo() < traj.t_begin() - tol || phi.t_hi() > traj.t_end() + tol)
    throw std::domain_error("weak_form_residual: phi support leaves the extent");
  const double dx = traj.frame(0).dx();
  const double h = traj.dt();
  double acc = 0.0;
  for (std::size_t i = 0; i < traj.frame_count(); ++i) {
    const double t = traj.time(i);
    const double wt =
        (i == 0 || i + 1 == traj.frame_count()) ? h / 2.0 : h;
    const GridField& u = traj.frame(i);
    const GridField ux = derivative(u, 1);
    const GridField uxx = derivative(u, 2);
    double row = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double x = u.x(j);
      const double pt = phi.dt(x, t);
      const double pxx = phi.dx(x, t, 2);
      row += u[j] * pt - uxx[j] * pxx - ux[j] * ux[j] * pxx;
    }
    acc += wt * row * dx;
  }
  return std::abs(acc);
}

}  // namespace sgm
