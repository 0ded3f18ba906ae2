// sgmlab: command-line laboratory for the fourth-order surface growth model.
// Subcommands map 1:1 onto the library modules; every output file carries the
// config hash and an echo of the physical parameters, and a fixed seed gives
// byte-identical reruns.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "sgm/checkpoint.hpp"
#include "sgm/cutoff.hpp"
#include "sgm/diagnostics.hpp"
#include "sgm/kernel.hpp"
#include "sgm/mild.hpp"
#include "sgm/norms.hpp"
#include "sgm/solver.hpp"
#include "sgm/spectral.hpp"

namespace {

using json = nlohmann::json;
using sgm::format_double;
using sgmlab::Config;
using sgmlab::ConfigError;

constexpr double kPi = 3.14159265358979323846;

/// Numerical outcome that is not a usage error: exit code 2.
struct DivergenceSignal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::filesystem::path& dir,
                       const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

void csv_preamble(std::ofstream& out, const Config& cfg) {
  out << "# config_hash=" << cfg.hash() << "\n";
  for (const auto& [k, v] : cfg.entries()) out << "# " << k << "=" << v << "\n";
}

json json_preamble(const Config& cfg) {
  json j;
  j["config_hash"] = cfg.hash();
  json echo = json::object();
  for (const auto& [k, v] : cfg.entries()) echo[k] = v;
  j["config"] = echo;
  return j;
}

void write_json(const std::filesystem::path& dir, const std::string& name,
                const json& j) {
  auto out = open_out(dir, name);
  out << j.dump(2) << "\n";
}

std::string exp_str(double p) {
  return p == sgm::kInf ? "inf" : format_double(p);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

// ---------------------------------------------------------------- kernel-table

int cmd_kernel_table(const Config& cfg, const std::filesystem::path& out) {
  cfg.require_known({"kernel.s_max", "kernel.profile_range", "profile.r_max",
                     "profile.step", "fit.t_lo", "fit.t_hi", "fit.points"});
  const sgm::KernelEval kernel(cfg.get_double("kernel.s_max", 3.2),
                               cfg.get_double("kernel.profile_range", 34.0));

  const double r_max = cfg.get_double("profile.r_max", 8.0);
  const double step = cfg.get_double("profile.step", 0.05);
  if (!(step > 0.0) || !(r_max > 0.0))
    throw ConfigError("config key 'profile.step'/'profile.r_max': must be > 0");
  {
    auto csv = open_out(out, "kernel_profile.csv");
    csv_preamble(csv, cfg);
    csv << "r,K0,K1,K2,K3,K4\n";
    for (double r = 0.0; r <= r_max + step / 2.0; r += step) {
      csv << format_double(r);
      for (unsigned k = 0; k <= 4; ++k)
        csv << "," << format_double(kernel.eval_profile(r, k));
      csv << "\n";
    }
  }

  const double t_lo = cfg.get_double("fit.t_lo", 1e-3);
  const double t_hi = cfg.get_double("fit.t_hi", 1e-1);
  const std::size_t pts = cfg.get_size("fit.points", 7);
  if (!(0.0 < t_lo && t_lo < t_hi) || pts < 2)
    throw ConfigError("config key 'fit.t_lo'/'fit.t_hi'/'fit.points': invalid range");
  double max_dev = 0.0;
  {
    auto csv = open_out(out, "kernel_decay.csv");
    csv_preamble(csv, cfg);
    csv << "k,p,slope,target,deviation\n";
    const double ps[3] = {1.0, 2.0, sgm::kInf};
    for (unsigned k = 0; k <= 3; ++k) {
      for (const double p : ps) {
        std::vector<double> lt, ln;
        for (std::size_t i = 0; i < pts; ++i) {
          const double t = t_lo * std::pow(t_hi / t_lo,
                                           static_cast<double>(i) /
                                               static_cast<double>(pts - 1));
          lt.push_back(std::log(t));
          ln.push_back(std::log(kernel.lp_norm(t, p, k)));
        }
        const double slope = fit_slope(lt, ln);
        const double target = -(k + 1.0 - sgm::inv_exp(p)) / 4.0;
        max_dev = std::max(max_dev, std::abs(slope - target));
        csv << k << "," << exp_str(p) << "," << format_double(slope) << ","
            << format_double(target) << ","
            << format_double(std::abs(slope - target)) << "\n";
      }
    }
  }

  json j = json_preamble(cfg);
  j["l1_constant"] = kernel.l1_constant();
  j["mass_at_t_lo"] = kernel.integral(t_lo);
  j["max_slope_deviation"] = max_dev;
  write_json(out, "kernel_summary.json", j);
  return 0;
}

// ------------------------------------------------------------------- simulate

sgm::GridField initial_condition(const Config& cfg, std::size_t n, double L) {
  const std::string type = cfg.get_string("ic.type", "single_mode");
  const double amp = cfg.get_double("ic.amplitude", 0.1);
  sgm::GridField u = sgm::GridField::zeros(n, L);
  if (type == "zero") return u;
  if (type == "single_mode") {
    const double mode = cfg.get_double("ic.mode", 1.0);
    for (std::size_t j = 0; j < n; ++j)
      u[j] = amp * std::sin(2.0 * kPi * mode * u.x(j) / L);
    return u;
  }
  if (type == "random") {
    std::mt19937_64 rng(cfg.get_size("seed", 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int m = 1; m <= 4; ++m) {
      const double a = 2.0 * unit(rng) - 1.0;
      const double ph = 2.0 * kPi * unit(rng);
      for (std::size_t j = 0; j < n; ++j)
        u[j] += a * std::sin(2.0 * kPi * m * u.x(j) / L + ph);
    }
    const double peak = u.max_abs();
    if (peak > 0.0) u *= amp / peak;
    u.remove_mean();
    return u;
  }
  throw ConfigError("config key 'ic.type': unknown value '" + type + "'");
}

int cmd_simulate(const Config& cfg, const std::filesystem::path& out) {
  cfg.require_known({"n", "period", "dt", "t_final", "save_every", "dealias",
                     "scheme", "nonlinear", "ic.type", "ic.amplitude",
                     "ic.mode", "seed"});
  sgm::SolverConfig sc;
  sc.n = cfg.get_size("n", 64);
  sc.period = cfg.get_double("period", 2.0 * kPi);
  sc.dt = cfg.get_double("dt", 1e-3);
  sc.t_final = cfg.get_double("t_final", 0.5);
  sc.save_every = cfg.get_size("save_every", 10);
  sc.dealias = cfg.get_bool("dealias", true);
  sc.nonlinear = cfg.get_bool("nonlinear", true);
  const std::string scheme = cfg.get_string("scheme", "etdrk4");
  if (scheme == "etdrk4")
    sc.scheme = sgm::Scheme::etdrk4;
  else if (scheme == "exp_euler")
    sc.scheme = sgm::Scheme::exp_euler;
  else
    throw ConfigError("config key 'scheme': unknown value '" + scheme + "'");
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const sgm::GridField u0 = initial_condition(cfg, sc.n, sc.period);
  const sgm::SimResult res = sgm::simulate(u0, sc);

  std::filesystem::create_directories(out);
  sgm::save_trajectory_file((out / "trajectory.csv").string(), res.trajectory,
                            cfg.hash());
  if (res.trajectory.frame_count() >= 3) {
    const auto recs = sgm::energy_report(res.trajectory);
    auto csv = open_out(out, "energy.csv");
    csv_preamble(csv, cfg);
    csv << "t,E,D,W,residual\n";
    for (const auto& r : recs)
      csv << format_double(r.t) << "," << format_double(r.E) << ","
          << format_double(r.D) << "," << format_double(r.W) << ","
          << format_double(r.residual) << "\n";
  }

  json j = json_preamble(cfg);
  j["frames"] = res.trajectory.frame_count();
  j["diverged"] = res.divergence.has_value();
  if (res.divergence) {
    j["divergence_time"] = res.divergence->t_fail;
    j["max_ux_at_failure"] = res.divergence->max_ux;
  }
  write_json(out, "simulate_summary.json", j);
  if (res.divergence)
    throw DivergenceSignal("simulation diverged at t = " +
                           format_double(res.divergence->t_fail));
  return 0;
}

// ------------------------------------------------------------------- diagnose

int cmd_diagnose(const Config& cfg, const std::filesystem::path& out) {
  cfg.require_known({"checkpoint", "census.r", "census.eps0", "census.stride",
                     "census.levels", "serrin.time", "serrin.space",
                     "poincare.count"});
  const std::string ckpt = cfg.get_string("checkpoint", "");
  if (ckpt.empty()) throw ConfigError("config key 'checkpoint': required");
  sgm::Trajectory traj;
  try {
    traj = sgm::load_trajectory_file(ckpt);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config key 'checkpoint': ") + e.what());
  }

  const double extent = traj.t_end() - traj.t_begin();
  const double r_default = std::min(traj.period() / 4.0,
                                    std::pow(extent / 2.0, 0.25));
  const double r = cfg.get_double("census.r", r_default);
  const double eps0 = cfg.get_double("census.eps0", 0.1);
  const std::size_t stride = cfg.get_size("census.stride", 1);
  const std::size_t levels = cfg.get_size("census.levels", 3);

  const sgm::CylinderCensus census = sgm::cylinder_census(traj, r, eps0, stride);
  {
    auto csv = open_out(out, "census.csv");
    csv_preamble(csv, cfg);
    csv << "x0,t0,r,Y,flag\n";
    for (const auto& e : census.entries)
      csv << format_double(e.Q.x0) << "," << format_double(e.Q.t0) << ","
          << format_double(e.Q.r) << "," << format_double(e.Y) << ","
          << (e.good ? "good" : "bad") << "\n";
  }

  const sgm::MixedExponents exps(cfg.get_exponent("serrin.time", 5.0),
                                 cfg.get_exponent("serrin.space", sgm::kInf));
  const sgm::SerrinReport serrin = sgm::serrin_monitor(traj, exps);

  const std::size_t pcount = cfg.get_size("poincare.count", 16);
  double max_ratio = 0.0;
  std::size_t used = 0;
  const std::size_t step =
      std::max<std::size_t>(1, census.entries.size() / std::max<std::size_t>(1, pcount));
  for (std::size_t i = 0; i < census.entries.size() && used < pcount; i += step) {
    const auto res = sgm::poincare_residual(traj, census.entries[i].Q);
    if (std::isfinite(res.ratio)) max_ratio = std::max(max_ratio, res.ratio);
    ++used;
  }

  json j = json_preamble(cfg);
  j["cylinders"] = census.entries.size();
  j["good"] = census.good_count;
  j["bad"] = census.bad_count;
  j["eps0"] = eps0;
  j["r"] = r;
  const auto slope = sgm::bad_set_slope(traj, r, levels, eps0, stride);
  if (slope)
    j["bad_set_slope"] = *slope;
  else
    j["bad_set_slope"] = nullptr;
  j["serrin"] = {{"norm", serrin.norm},
                 {"index", serrin.crit.index},
                 {"class", sgm::to_string(serrin.crit.cls)},
                 {"time_exp", exp_str(exps.time())},
                 {"space_exp", exp_str(exps.space())}};
  j["poincare_max_ratio"] = max_ratio;
  j["poincare_cylinders"] = used;
  write_json(out, "diagnose_summary.json", j);
  return 0;
}

// --------------------------------------------------------------------- picard

int cmd_picard(const Config& cfg, const std::filesystem::path& out) {
  cfg.require_known({"n", "period", "t_final", "frames", "exps.time",
                     "exps.space", "v.scale", "v.mode", "tol", "max_iter",
                     "calib.trials", "calib.levels", "seed"});
  const std::size_t n = cfg.get_size("n", 32);
  const double L = cfg.get_double("period", 1.0);
  const double T = cfg.get_double("t_final", 0.5);
  const std::size_t frames = cfg.get_size("frames", 41);
  if (frames < 3) throw ConfigError("config key 'frames': need >= 3");
  const sgm::MixedExponents exps(cfg.get_exponent("exps.time", sgm::kInf),
                                 cfg.get_exponent("exps.space", sgm::kInf));

  sgm::EstimateGeometry geom;
  geom.period = L;
  geom.t_final = T;
  geom.base_n = n;
  geom.base_frames = frames;
  geom.levels = cfg.get_size("calib.levels", 1);
  const double threshold = sgm::calibrate_smallness_threshold(
      exps, geom, cfg.get_size("calib.trials", 12), cfg.get_size("seed", 0));

  // background flow: a single smooth mode, rescaled below the calibrated
  // smallness threshold
  const double mode = cfg.get_double("v.mode", 1.0);
  const double scale = cfg.get_double("v.scale", 0.5);
  std::vector<sgm::GridField> vf;
  std::vector<double> times;
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(frames - 1);
    sgm::GridField g = sgm::GridField::zeros(n, L);
    for (std::size_t jx = 0; jx < n; ++jx)
      g[jx] = std::sin(2.0 * kPi * mode * g.x(jx) / L) *
              std::exp(-t / std::max(T, 1e-12));
    vf.push_back(std::move(g));
    times.push_back(t);
  }
  sgm::Trajectory v(std::move(vf), std::move(times));
  const double raw = sgm::mixed_norm(v, exps);
  if (raw > 0.0) {
    std::vector<sgm::GridField> scaled;
    for (std::size_t i = 0; i < v.frame_count(); ++i)
      scaled.push_back((scale * threshold / raw) * v.frame(i));
    v = sgm::Trajectory(std::move(scaled), std::vector<double>(v.times()));
  }

  const sgm::CutoffFunction phi(L, L / 2.0, L / 8.0, L / 4.0, 0.05 * T,
                                0.95 * T, 0.25 * 0.9 * T);
  const double tol = cfg.get_double("tol", 1e-11);
  const auto result = sgm::picard_solve(v, phi, exps, tol,
                                        cfg.get_size("max_iter", 40), threshold);
  const double residual = sgm::representation_residual(result.w, v, phi);

  {
    auto csv = open_out(out, "picard.csv");
    csv_preamble(csv, cfg);
    csv << "iteration,diff,ratio\n";
    for (std::size_t i = 0; i < result.report.diff_norms.size(); ++i)
      csv << (i + 1) << "," << format_double(result.report.diff_norms[i]) << ","
          << (i == 0 ? std::string("")
                     : format_double(result.report.ratios[i - 1]))
          << "\n";
  }
  json j = json_preamble(cfg);
  j["iterates"] = result.report.iterates;
  j["converged"] = result.report.converged;
  j["smallness_norm"] = result.report.smallness_norm;
  j["threshold"] = threshold;
  j["below_threshold"] = result.report.smallness_norm < threshold;
  j["max_ratio"] = result.report.ratios.empty()
                       ? 0.0
                       : *std::max_element(result.report.ratios.begin(),
                                           result.report.ratios.end());
  j["representation_residual"] = residual;
  write_json(out, "picard_summary.json", j);
  if (!result.report.converged)
    throw DivergenceSignal("Picard iteration did not contract to tolerance");
  return 0;
}

// ----------------------------------------------------------- verify-estimates

int cmd_verify_estimates(const Config& cfg, const std::filesystem::path& out) {
  cfg.require_known({"k", "src.time", "src.space", "dst.time", "dst.space",
                     "trials", "seed", "geom.period", "geom.t_final",
                     "geom.base_n", "geom.base_frames", "geom.levels"});
  const unsigned k = static_cast<unsigned>(cfg.get_size("k", 3));
  const sgm::MixedExponents src(cfg.get_exponent("src.time", 2.0),
                                cfg.get_exponent("src.space", 2.0));
  const sgm::MixedExponents dst(cfg.get_exponent("dst.time", sgm::kInf),
                                cfg.get_exponent("dst.space", sgm::kInf));
  sgm::EstimateGeometry geom;
  geom.period = cfg.get_double("geom.period", 1.0);
  geom.t_final = cfg.get_double("geom.t_final", 0.5);
  geom.base_n = cfg.get_size("geom.base_n", 32);
  geom.base_frames = cfg.get_size("geom.base_frames", 33);
  geom.levels = cfg.get_size("geom.levels", 3);

  const sgm::EstimateTable table = sgm::verify_convolution_estimate(
      k, src, dst, cfg.get_size("trials", 12), geom, cfg.get_size("seed", 0));

  {
    auto csv = open_out(out, "estimates.csv");
    csv_preamble(csv, cfg);
    csv << "level,n,frames,max_ratio,median_ratio\n";
    for (const auto& row : table.rows)
      csv << row.level << "," << row.n << "," << row.frames << ","
          << format_double(row.max_ratio) << ","
          << format_double(row.median_ratio) << "\n";
  }
  json j = json_preamble(cfg);
  j["k"] = table.k;
  j["src"] = {{"time", exp_str(table.lp)}, {"space", exp_str(table.l)}};
  j["dst"] = {{"time", exp_str(table.rp)}, {"space", exp_str(table.r)}};
  j["condition_strict"] = table.cond_strict;
  j["condition_weak"] = table.cond_weak;
  j["unbounded_probe"] = table.unbounded_probe;
  double cmax = 0.0;
  for (const auto& row : table.rows) cmax = std::max(cmax, row.max_ratio);
  j["max_ratio"] = cmax;
  write_json(out, "estimates_summary.json", j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sgmlab: numerical laboratory for the 1-D surface growth model"};
  app.require_subcommand(1);

  struct Common {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> sets;
  };
  std::map<std::string, Common> opts;
  std::map<std::string, int (*)(const Config&, const std::filesystem::path&)>
      handlers = {{"kernel-table", cmd_kernel_table},
                  {"simulate", cmd_simulate},
                  {"diagnose", cmd_diagnose},
                  {"picard", cmd_picard},
                  {"verify-estimates", cmd_verify_estimates}};
  const std::map<std::string, std::string> descr = {
      {"kernel-table", "kernel profile table and decay-law fits"},
      {"simulate", "run the pseudospectral solver, write checkpoint + energy"},
      {"diagnose", "cylinder census, Serrin norms and Poincare ratios"},
      {"picard", "calibrated small-data Picard iteration"},
      {"verify-estimates", "empirical constants of the convolution estimate"}};
  for (const auto& [name, fn] : handlers) {
    (void)fn;
    CLI::App* sub = app.add_subcommand(name, descr.at(name));
    Common& c = opts[name];
    sub->add_option("-c,--config", c.config_path, "key = value config file");
    sub->add_option("-o,--out", c.out_dir, "output directory");
    sub->add_option("-s,--set", c.sets, "override: key=value (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // contract: 0 = success (covers --help), 1 = usage error
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Common& c = opts[name];
  try {
    Config cfg;
    if (!c.config_path.empty()) cfg.load_file(c.config_path);
    for (const auto& s : c.sets) cfg.parse_line(s, "--set");
    return handlers.at(name)(cfg, c.out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "sgmlab " << name << ": " << e.what() << "\n";
    return 1;
  } catch (const DivergenceSignal& e) {
    std::cerr << "sgmlab " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sgmlab " << name << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sgmlab " << name << ": " << e.what() << "\n";
    return 1;
  }
}
