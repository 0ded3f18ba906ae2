#ifndef SGM_FIELD_HPP
#define SGM_FIELD_HPP

#include <cstddef>
#include <vector>

namespace sgm {

/// One periodic spatial field sampled on a uniform grid over [0, L).
class GridField {
 public:
  GridField() = default;
  GridField(std::vector<double> samples, double period);

  /// Zero field with n samples.
  static GridField zeros(std::size_t n, double period);

  std::size_t size() const { return samples_.size(); }
  double period() const { return period_; }
  double dx() const { return period_ / static_cast<double>(samples_.size()); }
  double x(std::size_t j) const { return dx() * static_cast<double>(j); }

  double operator[](std::size_t j) const { return samples_[j]; }
  double& operator[](std::size_t j) { return samples_[j]; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }

  double mean() const;
  double max_abs() const;
  bool finite() const;

  /// |mean| <= 1e-12 * max(1, max|samples|)
  bool is_zero_mean() const;

  /// Subtract the mean in place.
  void remove_mean();

  GridField& operator+=(const GridField& other);
  GridField& operator-=(const GridField& other);
  GridField& operator*=(double a);

 private:
  std::vector<double> samples_;
  double period_ = 1.0;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double a, GridField f);

/// Pointwise product on the shared grid.
GridField pointwise(const GridField& a, const GridField& b);

/// Time-indexed sequence of frames on a shared grid, uniform time step.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<GridField> frames, std::vector<double> times);

  std::size_t frame_count() const { return frames_.size(); }
  const GridField& frame(std::size_t i) const { return frames_[i]; }
  GridField& frame(std::size_t i) { return frames_[i]; }
  double time(std::size_t i) const { return times_[i]; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<GridField>& frames() const { return frames_; }

  double period() const { return frames_.front().period(); }
  std::size_t grid_size() const { return frames_.front().size(); }
  double dt() const;
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }

 private:
  std::vector<GridField> frames_;
  std::vector<double> times_;
};

}  // namespace sgm

#endif
