#include "sgm/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sgm {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_trajectory(std::ostream& out, const Trajectory& traj,
                     const std::string& config_hash) {
  const std::size_t n = traj.grid_size();
  out << "# sgm-trajectory v1\n";
  out << "# config_hash=" << config_hash << "\n";
  out << "# N=" << n << " L=" << format_double(traj.period())
      << " dt=" << format_double(traj.frame_count() > 1 ? traj.dt() : 0.0)
      << " frames=" << traj.frame_count() << "\n";
  out << "t";
  for (std::size_t j = 0; j < n; ++j) out << ",u" << j;
  out << "\n";
  for (std::size_t i = 0; i < traj.frame_count(); ++i) {
    out << format_double(traj.time(i));
    for (std::size_t j = 0; j < n; ++j)
      out << "," << format_double(traj.frame(i)[j]);
    out << "\n";
  }
}

void save_trajectory_file(const std::string& path, const Trajectory& traj,
                          const std::string& config_hash) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_trajectory(out, traj, config_hash);
}

Trajectory load_trajectory(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  double period = 0.0;
  bool magic_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("# sgm-trajectory", 0) == 0) {
      magic_seen = true;
      continue;
    }
    if (line.rfind("# N=", 0) == 0) {
      std::size_t frames = 0;
      double dt = 0.0;
      if (std::sscanf(line.c_str(), "# N=%zu L=%lf dt=%lf frames=%zu", &n,
                      &period, &dt, &frames) != 4)
        throw std::runtime_error("checkpoint: malformed header line: " + line);
      continue;
    }
    if (!line.empty() && line[0] == '#') continue;
    if (line.rfind("t,", 0) == 0) break;  // column header
  }
  if (!magic_seen || n == 0)
    throw std::runtime_error("checkpoint: missing header");

  std::vector<GridField> frames;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    if (!std::getline(row, cell, ',')) continue;
    times.push_back(std::stod(cell));
    std::vector<double> vals;
    vals.reserve(n);
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != n)
      throw std::runtime_error("checkpoint: row width mismatch");
    frames.emplace_back(std::move(vals), period);
  }
  return Trajectory(std::move(frames), std::move(times));
}

Trajectory load_trajectory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_trajectory(in);
}

}  // namespace sgm
