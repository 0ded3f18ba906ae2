#include "sgm/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgm {

GridField::GridField(std::vector<double> samples, double period)
    : samples_(std::move(samples)), period_(period) {
  if (samples_.size() < 2) throw std::invalid_argument("GridField: need at least 2 samples");
  if (!(period_ > 0.0) || !std::isfinite(period_))
    throw std::invalid_argument("GridField: period must be positive");
}

GridField GridField::zeros(std::size_t n, double period) {
  return GridField(std::vector<double>(n, 0.0), period);
}

double GridField::mean() const {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / static_cast<double>(samples_.size());
}

double GridField::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

bool GridField::finite() const {
  return std::all_of(samples_.begin(), samples_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool GridField::is_zero_mean() const {
  return std::abs(mean()) <= 1e-12 * std::max(1.0, max_abs());
}

void GridField::remove_mean() {
  double m = mean();
  for (double& v : samples_) v -= m;
}

GridField& GridField::operator+=(const GridField& other) {
  if (other.size() != size()) throw std::invalid_argument("GridField: size mismatch");
  for (std::size_t j = 0; j < size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

GridField& GridField::operator-=(const GridField& other) {
  if (other.size() != size()) throw std::invalid_argument("GridField: size mismatch");
  for (std::size_t j = 0; j < size(); ++j) samples_[j] -= other.samples_[j];
  return *this;
}

GridField& GridField::operator*=(double a) {
  for (double& v : samples_) v *= a;
  return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double a, GridField f) { return f *= a; }

GridField pointwise(const GridField& a, const GridField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pointwise: size mismatch");
  GridField out = a;
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
  return out;
}

Trajectory::Trajectory(std::vector<GridField> frames, std::vector<double> times)
    : frames_(std::move(frames)), times_(std::move(times)) {
  if (frames_.empty() || frames_.size() != times_.size())
    throw std::invalid_argument("Trajectory: frames/times mismatch");
  const std::size_t n = frames_.front().size();
  const double L = frames_.front().period();
  for (const auto& f : frames_)
    if (f.size() != n || f.period() != L)
      throw std::invalid_argument("Trajectory: all frames must share N and L");
  if (times_.size() >= 2) {
    const double h = times_[1] - times_[0];
    if (!(h > 0.0)) throw std::invalid_argument("Trajectory: times must increase");
    for (std::size_t i = 1; i + 1 < times_.size(); ++i) {
      const double hi = times_[i + 1] - times_[i];
      if (std::abs(hi - h) > 1e-12 * std::max(std::abs(h), 1.0))
        throw std::invalid_argument("Trajectory: non-uniform time grid");
    }
  }
}

double Trajectory::dt() const {
  if (times_.size() < 2) throw std::logic_error("Trajectory: dt needs >= 2 frames");
  return times_[1] - times_[0];
}

}  // namespace sgm
