#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polexp {

/// Positive time interval [t_min, t_max] over which approximants must be
/// uniformly accurate. Degenerate intervals (t_min == t_max) are allowed.
class TimeInterval {
 public:
  TimeInterval(double t_min, double t_max) : t_min_(t_min), t_max_(t_max) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || !std::isfinite(t_max)) {
      throw std::domain_error("TimeInterval: need 0 < t_min <= t_max < inf");
    }
  }

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double ratio() const { return t_max_ / t_min_; }
  bool degenerate() const { return t_min_ == t_max_; }

  /// Logarithmically spaced time grid with exact endpoints. A degenerate
  /// interval collapses to the single point {t_min}.
  std::vector<double> log_grid(int count) const;

 private:
  double t_min_;
  double t_max_;
};

inline std::vector<double> TimeInterval::log_grid(int count) const {
  if (degenerate()) return {t_min_};
  if (count < 2) throw std::domain_error("TimeInterval::log_grid: count must be >= 2");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double la = std::log(t_min_);
  const double lb = std::log(t_max_);
  for (int j = 0; j < count; ++j) {
    grid[static_cast<std::size_t>(j)] = std::exp(la + (lb - la) * j / (count - 1));
  }
  grid.front() = t_min_;
  grid.back() = t_max_;
  return grid;
}

}  // namespace polexp
