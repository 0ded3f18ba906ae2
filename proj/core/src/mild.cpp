#include "sgm/mild.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sgm/fft.hpp"
#include "sgm/norms.hpp"
#include "sgm/spectral.hpp"

namespace sgm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// g1(z) = (1 - e^{-z})/z, g2(z) = (e^{-z} - 1 + z)/z^2, both for z >= 0.
double g1(double z) {
  if (z < 1e-5) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
  return -std::expm1(-z) / z;
}

double g2(double z) {
  if (z < 1e-5) return 0.5 - z / 6.0 + z * z / 24.0;
  return (std::expm1(-z) + z) / (z * z);
}

struct ModeContext {
  std::vector<double> mu;                  // (2 pi kappa / L)^4
  std::vector<std::complex<double>> mult;  // (2 pi i kappa / L)^k
};

ModeContext mode_context(std::size_t n, double period, unsigned k) {
  ModeContext ctx;
  ctx.mu.resize(n);
  ctx.mult.resize(n);
  static const std::complex<double> cyc[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int half = static_cast<int>(n) / 2;
  for (std::size_t j = 0; j < n; ++j) {
    const int kappa = j < n / 2 ? static_cast<int>(j)
                                : static_cast<int>(j) - static_cast<int>(n);
    const double xi = kTwoPi * kappa / period;
    ctx.mu[j] = xi * xi * xi * xi;
    if (kappa == -half && k % 2 == 1) {
      ctx.mult[j] = 0.0;
      continue;
    }
    double w = 1.0;
    for (unsigned p = 0; p < k; ++p) w *= xi;
    ctx.mult[j] = cyc[k % 4] * w;
  }
  return ctx;
}

std::vector<SpectralField> transform_frames(const Trajectory& traj) {
  std::vector<SpectralField> out;
  out.reserve(traj.frame_count());
  for (std::size_t i = 0; i < traj.frame_count(); ++i)
    out.push_back(fft_forward(traj.frame(i)));
  return out;
}

}  // namespace

Trajectory assemble_fv(const Trajectory& v, const CutoffFunction& phi) {
  if (phi.period() != v.period())
    throw std::domain_error("assemble_fv: cutoff period does not match trajectory");
  const double tol = 1e-12 * std::max(1.0, v.t_end());
  if (phi.t_lo() < v.t_begin() - tol || phi.t_hi() > v.t_end() + tol)
    throw std::domain_error("assemble_fv: cutoff time support outside trajectory");

  const GridField& like = v.frame(0);
  std::vector<GridField> phix(5, GridField::zeros(like.size(), like.period()));
  for (unsigned k = 0; k <= 4; ++k) phix[k] = phi.sample_space(like, k);

  std::vector<GridField> frames;
  std::vector<double> times(v.times());
  frames.reserve(v.frame_count());
  for (std::size_t i = 0; i < v.frame_count(); ++i) {
    const double t = v.time(i);
    const GridField& u = v.frame(i);
    const GridField v1 = derivative(u, 1);
    const GridField v2 = derivative(u, 2);
    const GridField v3 = derivative(u, 3);
    const GridField sq = pointwise(u, u);
    const GridField sq1 = derivative(sq, 1);
    const GridField sq2 = derivative(sq, 2);
    const double T0 = phi.time(t, 0);
    const double T1 = phi.time(t, 1);
    GridField f = GridField::zeros(u.size(), u.period());
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double lin = u[j] * phix[0][j] * T1 +
                         (4.0 * v3[j] * phix[1][j] + 6.0 * v2[j] * phix[2][j] +
                          4.0 * v1[j] * phix[3][j] + u[j] * phix[4][j]) * T0;
      const double quad = (3.0 * phix[1][j] * sq2[j] + 3.0 * phix[2][j] * sq1[j] +
                           phix[3][j] * sq[j]) * T0;
      f[j] = lin + quad;
    }
    frames.push_back(std::move(f));
  }
  return Trajectory(std::move(frames), std::move(times));
}

GridField duhamel(const Trajectory& source, unsigned k, double t) {
  if (k > 3) throw std::domain_error("duhamel: k <= 3 (integrable singularity)");
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  if (t < source.t_begin() - tol || t > source.t_end() + tol)
    throw std::domain_error("duhamel: t outside the source extent");
  const std::size_t n = source.grid_size();
  const ModeContext ctx = mode_context(n, source.period(), k);
  const std::vector<SpectralField> hats = transform_frames(source);

  std::vector<std::complex<double>> acc(n, 0.0);
  for (std::size_t i = 0; i + 1 < source.frame_count(); ++i) {
    double s0 = source.time(i), s1 = source.time(i + 1);
    if (s0 >= t - tol) break;
    std::vector<std::complex<double>> f1(n);
    double frac = 1.0;
    if (s1 > t) {
      frac = (t - s0) / (s1 - s0);
      s1 = t;
    }
    const double h = s1 - s0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::complex<double> a = hats[i][j];
      const std::complex<double> b =
          hats[i][j] + frac * (hats[i + 1][j] - hats[i][j]);
      const double z = ctx.mu[j] * h;
      const double decay = std::exp(-ctx.mu[j] * (t - s1));
      acc[j] += ctx.mult[j] * decay * h * (a * g1(z) + (b - a) * g2(z));
    }
  }
  return fft_inverse(SpectralField(std::move(acc), source.period()));
}

Trajectory duhamel_series(const Trajectory& source, unsigned k) {
  if (k > 3) throw std::domain_error("duhamel_series: k <= 3");
  const std::size_t n = source.grid_size();
  const std::size_t m = source.frame_count();
  const ModeContext ctx = mode_context(n, source.period(), k);
  const std::vector<SpectralField> hats = transform_frames(source);

  std::vector<GridField> frames;
  frames.reserve(m);
  std::vector<std::complex<double>> acc(n, 0.0);
  frames.push_back(GridField::zeros(n, source.period()));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = source.time(i + 1) - source.time(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double z = ctx.mu[j] * h;
      const std::complex<double> a = hats[i][j];
      const std::complex<double> b = hats[i + 1][j];
      acc[j] = std::exp(-z) * acc[j] +
               ctx.mult[j] * h * (a * g1(z) + (b - a) * g2(z));
    }
    frames.push_back(fft_inverse(SpectralField(acc, source.period())));
  }
  return Trajectory(std::move(frames), std::vector<double>(source.times()));
}

PicardResult picard_solve(const Trajectory& v, const CutoffFunction& phi,
                          const MixedExponents& exps, double tol,
                          std::size_t max_iter, double threshold,
                          std::optional<Trajectory> w0_override) {
  const Trajectory fv = assemble_fv(v, phi);
  const Trajectory w0 = duhamel_series(fv, 0);
  Trajectory w = w0_override ? *w0_override : w0;

  PicardReport report;
  report.smallness_norm = mixed_norm(v, exps);
  report.threshold = threshold;

  const MixedExponents sup_exps(kInf, kInf);
  for (std::size_t it = 0; it < max_iter; ++it) {
    // w_next = -duhamel(v w, 3) + w0
    std::vector<GridField> prod;
    prod.reserve(v.frame_count());
    for (std::size_t i = 0; i < v.frame_count(); ++i)
      prod.push_back(pointwise(v.frame(i), w.frame(i)));
    const Trajectory vw(std::move(prod), std::vector<double>(v.times()));
    const Trajectory conv = duhamel_series(vw, 3);
    std::vector<GridField> next;
    next.reserve(w.frame_count());
    double diff = 0.0;
    for (std::size_t i = 0; i < w.frame_count(); ++i) {
      GridField f = w0.frame(i) - conv.frame(i);
      diff = std::max(diff, (f - w.frame(i)).max_abs());
      next.push_back(std::move(f));
    }
    w = Trajectory(std::move(next), std::vector<double>(v.times()));
    report.iterates = it + 1;
    report.diff_norms.push_back(diff);
    if (report.diff_norms.size() >= 2) {
      const double prev = report.diff_norms[report.diff_norms.size() - 2];
      report.ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
    }
    if (diff < tol) {
      report.converged = true;
      break;
    }
  }
  return PicardResult{std::move(w), std::move(report)};
}

namespace {

// Compactly supported bump profile on (-1, 1), unnormalized.
double bump_profile(double s) {
  const double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s2));
}

}  // namespace

Trajectory mollify(const Trajectory& v, double eps) {
  const double extent = v.t_end() - v.t_begin();
  if (!(eps > 0.0) || eps >= extent / 4.0)
    throw std::domain_error("mollify: eps must lie in (0, time extent / 4)");
  if (2.0 * eps > v.period())
    throw std::domain_error("mollify: spatial width exceeds the period");

  const double dx = v.frame(0).dx();
  const double dt = v.dt();
  const std::size_t n = v.grid_size();
  const std::size_t m = v.frame_count();

  // spatial weights (circular), normalized to sum 1
  const int hx = static_cast<int>(std::floor(eps / dx));
  std::vector<double> wx(2 * hx + 1);
  double sx = 0.0;
  for (int j = -hx; j <= hx; ++j) sx += wx[j + hx] = bump_profile(j * dx / eps);
  for (double& w : wx) w /= sx;

  // temporal weights (zero extension), width eps^4
  const double eps4 = eps * eps * eps * eps;
  const int ht = static_cast<int>(std::floor(eps4 / dt));
  std::vector<double> wt(2 * ht + 1);
  double st = 0.0;
  for (int i = -ht; i <= ht; ++i) st += wt[i + ht] = bump_profile(i * dt / eps4);
  for (double& w : wt) w /= st;

  // convolve in x first, then in t
  std::vector<GridField> xsm;
  xsm.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    GridField g = GridField::zeros(n, v.period());
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int o = -hx; o <= hx; ++o) {
        const std::size_t src = (j + n + static_cast<std::size_t>(o + static_cast<int>(n))) % n;
        s += wx[o + hx] * v.frame(i)[src];
      }
      g[j] = s;
    }
    xsm.push_back(std::move(g));
  }
  std::vector<GridField> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    GridField g = GridField::zeros(n, v.period());
    for (int o = -ht; o <= ht; ++o) {
      const long long src = static_cast<long long>(i) - o;
      if (src < 0 || src >= static_cast<long long>(m)) continue;  // zero extension
      const double w = wt[o + ht];
      for (std::size_t j = 0; j < n; ++j) g[j] += w * xsm[src][j];
    }
    out.push_back(std::move(g));
  }
  return Trajectory(std::move(out), std::vector<double>(v.times()));
}

bool estimate_condition_strict(unsigned k, const MixedExponents& src,
                               const MixedExponents& dst) {
  const double lhs = inv_exp(src.space()) + 4.0 * inv_exp(src.time());
  const double rhs = inv_exp(dst.space()) + 4.0 * inv_exp(dst.time()) +
                     (4.0 - static_cast<double>(k));
  return lhs < rhs;
}

bool estimate_condition_weak(unsigned k, const MixedExponents& src,
                             const MixedExponents& dst) {
  const double lhs = inv_exp(src.space()) + 4.0 * inv_exp(src.time());
  const double rhs = inv_exp(dst.space()) + 4.0 * inv_exp(dst.time()) +
                     (4.0 - static_cast<double>(k));
  return lhs <= rhs && src.time() > 1.0 && src.time() < dst.time() &&
         dst.time() != kInf;
}

bool ladder_link_ok(const MixedExponents& src, const MixedExponents& dst) {
  return inv_exp(src.space()) + 4.0 * inv_exp(src.time()) <
         inv_exp(dst.space()) + 4.0 * inv_exp(dst.time()) + 1.0;
}

namespace {

using SourceFn = std::function<double(double, double)>;

// Three families of random sources; parameters drawn once per trial so the
// same continuous source is sampled at every refinement level.
SourceFn random_source(std::mt19937_64& rng, double period, double t_final,
                       int family) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (family == 0) {
    // band-limited noise with a smooth time envelope
    const int kmax = 5;
    std::vector<double> amp(kmax + 1), phase(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
      amp[k] = 2.0 * unit(rng) - 1.0;
      phase[k] = kTwoPi * unit(rng);
    }
    const double envk = 1.0 + std::floor(3.0 * unit(rng));
    return [=](double x, double t) {
      double s = 0.0;
      for (int k = 1; k <= kmax; ++k)
        s += amp[k] * std::cos(kTwoPi * k * x / period + phase[k]);
      const double e = std::sin(std::numbers::pi * t / t_final);
      return s * std::pow(std::abs(e), envk);
    };
  }
  if (family == 1) {
    // space-time bump
    const double x0 = period * unit(rng);
    const double rx = period * (0.08 + 0.15 * unit(rng));
    const double tc = t_final * (0.3 + 0.4 * unit(rng));
    const double rt = t_final * (0.1 + 0.2 * unit(rng));
    return [=](double x, double t) {
      const double d = std::remainder(x - x0, period);
      return bump_profile(d / rx) * bump_profile((t - tc) / rt) /
             (bump_profile(0.0) * bump_profile(0.0));
    };
  }
  // near-singular peak, bounded but sharply concentrated
  const double x0 = period * unit(rng);
  const double delta = 0.02 + 0.08 * unit(rng);
  const double beta = 0.3 + 0.4 * unit(rng);
  const double tc = t_final * (0.3 + 0.4 * unit(rng));
  const double dt0 = t_final * (0.05 + 0.1 * unit(rng));
  return [=](double x, double t) {
    const double d = std::remainder(x - x0, period) / period;
    const double space = std::pow(d * d + delta * delta, -beta);
    const double time = dt0 * dt0 / ((t - tc) * (t - tc) + dt0 * dt0);
    return space * time;
  };
}

Trajectory sample_source(const SourceFn& f, std::size_t n, std::size_t frames,
                         double period, double t_final) {
  std::vector<GridField> fr;
  std::vector<double> times;
  fr.reserve(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = t_final * static_cast<double>(i) /
                     static_cast<double>(frames - 1);
    GridField g = GridField::zeros(n, period);
    for (std::size_t j = 0; j < n; ++j)
      g[j] = f(g.x(j), t);
    fr.push_back(std::move(g));
    times.push_back(t);
  }
  return Trajectory(std::move(fr), std::move(times));
}

}  // namespace

EstimateTable verify_convolution_estimate(unsigned k, const MixedExponents& src,
                                          const MixedExponents& dst,
                                          std::size_t trials,
                                          const EstimateGeometry& geom,
                                          std::uint64_t seed) {
  if (trials < 10)
    throw std::invalid_argument("verify_convolution_estimate: trials >= 10");
  EstimateTable table;
  table.k = k;
  table.l = src.space();
  table.lp = src.time();
  table.r = dst.space();
  table.rp = dst.time();
  table.cond_strict = estimate_condition_strict(k, src, dst);
  table.cond_weak = estimate_condition_weak(k, src, dst);
  table.unbounded_probe = !table.cond_strict && !table.cond_weak;

  std::mt19937_64 rng(seed);
  std::vector<SourceFn> sources;
  sources.reserve(trials);
  for (std::size_t tr = 0; tr < trials; ++tr)
    sources.push_back(
        random_source(rng, geom.period, geom.t_final, static_cast<int>(tr % 3)));

  for (std::size_t lev = 0; lev < geom.levels; ++lev) {
    const std::size_t n = geom.base_n << lev;
    const std::size_t frames = ((geom.base_frames - 1) << lev) + 1;
    std::vector<double> ratios;
    ratios.reserve(trials);
    for (const auto& f : sources) {
      const Trajectory ftraj =
          sample_source(f, n, frames, geom.period, geom.t_final);
      const double denom = mixed_norm(ftraj, src);
      if (denom == 0.0) continue;
      const Trajectory v = duhamel_series(ftraj, k);
      ratios.push_back(mixed_norm(v, dst) / denom);
    }
    std::sort(ratios.begin(), ratios.end());
    EstimateRow row;
    row.level = lev;
    row.n = n;
    row.frames = frames;
    row.max_ratio = ratios.empty() ? 0.0 : ratios.back();
    row.median_ratio = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
    table.rows.push_back(row);
  }
  return table;
}

double calibrate_smallness_threshold(const MixedExponents& exps,
                                     const EstimateGeometry& geom,
                                     std::size_t trials, std::uint64_t seed) {
  const EstimateTable t = verify_convolution_estimate(
      3, exps, MixedExponents(kInf, kInf), trials, geom, seed);
  double c = 0.0;
  for (const auto& row : t.rows) c = std::max(c, row.max_ratio);
  if (c == 0.0) throw std::runtime_error("calibrate: degenerate measurement");
  return 1.0 / (2.0 * c);
}

double representation_residual(const Trajectory& w, const Trajectory& v,
                               const CutoffFunction& phi) {
  const Trajectory fv = assemble_fv(v, phi);

  // (b) Duhamel plug-back
  std::vector<GridField> prod;
  prod.reserve(v.frame_count());
  for (std::size_t i = 0; i < v.frame_count(); ++i)
    prod.push_back(pointwise(v.frame(i), w.frame(i)));
  const Trajectory vw(std::move(prod), std::vector<double>(v.times()));
  const Trajectory conv = duhamel_series(vw, 3);
  const Trajectory w0 = duhamel_series(fv, 0);
  double res_b = 0.0, w_sup = 0.0;
  for (std::size_t i = 0; i < w.frame_count(); ++i) {
    res_b = std::max(
        res_b, (w.frame(i) - (w0.frame(i) - conv.frame(i))).max_abs());
    w_sup = std::max(w_sup, w.frame(i).max_abs());
  }
  res_b /= std::max(w_sup, 1e-300);

  // (a) weak form of w_t + w_xxxx + (wv)_xxx - f_v = 0 against interior bumps.
  // Only the time derivative moves onto psi; the spatial derivatives stay on
  // the band-limited fields (spectral, exact), so psi enters at orders 0 and 1
  // where the grid quadrature is accurate.
  const double L = w.period();
  const double t0 = w.t_begin(), t1 = w.t_end();
  const double span = t1 - t0;
  std::vector<CutoffFunction> tests;
  tests.emplace_back(L, 0.25 * L, 0.10 * L, 0.22 * L, t0 + 0.1 * span,
                     t1 - 0.1 * span, 0.25 * span);
  tests.emplace_back(L, 0.65 * L, 0.12 * L, 0.24 * L, t0 + 0.15 * span,
                     t1 - 0.2 * span, 0.2 * span);
  const double dx = w.frame(0).dx();
  const double h = w.dt();
  double res_a = 0.0;
  for (const auto& psi : tests) {
    // the four integrals separately; the residual is their cancellation
    double terms[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < w.frame_count(); ++i) {
      const double t = w.time(i);
      const double wt = (i == 0 || i + 1 == w.frame_count()) ? h / 2.0 : h;
      const GridField w4 = derivative(w.frame(i), 4);
      const GridField vw3 =
          derivative(pointwise(v.frame(i), w.frame(i)), 3);
      double row[4] = {0.0, 0.0, 0.0, 0.0};
      for (std::size_t j = 0; j < w.frame(i).size(); ++j) {
        const double x = w.frame(i).x(j);
        row[0] += -w.frame(i)[j] * psi.dt(x, t);
        row[1] += w4[j] * psi(x, t);
        row[2] += vw3[j] * psi(x, t);
        row[3] += -fv.frame(i)[j] * psi(x, t);
      }
      for (int q = 0; q < 4; ++q) terms[q] += wt * row[q] * dx;
    }
    const double sum = terms[0] + terms[1] + terms[2] + terms[3];
    const double scale = std::abs(terms[0]) + std::abs(terms[1]) +
                         std::abs(terms[2]) + std::abs(terms[3]);
    res_a = std::max(res_a, std::abs(sum) / std::max(scale, 1e-300));
  }
  return std::max(res_a, res_b);
}

}  // namespace sgm
