#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/model.hpp"

namespace hjs {

// Mode-indexed function sampled on the grid: values w_i(x) for every node x
// and mode i, stored mode-major. Off-node evaluation is periodic multilinear.
class GridVectorFunction {
 public:
  GridVectorFunction(TorusGrid grid, int modes, double fill = 0.0)
      : grid_(grid), modes_(modes), values_(static_cast<std::size_t>(modes) * grid.node_count(), fill) {}

  const TorusGrid& grid() const { return grid_; }
  int modes() const { return modes_; }
  int nodes() const { return grid_.node_count(); }

  double& at(int mode, int node) { return values_[static_cast<std::size_t>(mode) * nodes() + node]; }
  double at(int mode, int node) const {
    return values_[static_cast<std::size_t>(mode) * nodes() + node];
  }
  double* mode_data(int mode) { return values_.data() + static_cast<std::size_t>(mode) * nodes(); }
  const double* mode_data(int mode) const {
    return values_.data() + static_cast<std::size_t>(mode) * nodes();
  }
  std::vector<double>& raw() { return values_; }
  const std::vector<double>& raw() const { return values_; }

  double eval(int mode, const Point& x) const { return grid_.interpolate(mode_data(mode), x); }

  double sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
  }

  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }
  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

  // Max over modes and axis-neighbor node pairs of |dw| / dx.
  double lipschitz_estimate() const {
    double worst = 0.0;
    const int n = grid_.nodes_per_axis();
    for (int i = 0; i < modes_; ++i) {
      const double* w = mode_data(i);
      for (int k = 0; k < nodes(); ++k) {
        int k0 = k % n, k1 = k / n;
        worst = std::max(worst, std::fabs(w[grid_.flat_index(k0 + 1, k1)] - w[k]));
        if (grid_.dim() == 2)
          worst = std::max(worst, std::fabs(w[grid_.flat_index(k0, k1 + 1)] - w[k]));
      }
    }
    return worst / grid_.spacing();
  }

  GridVectorFunction& operator+=(double a) {
    for (double& v : values_) v += a;
    return *this;
  }

  static double sup_distance(const GridVectorFunction& a, const GridVectorFunction& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values_.size(); ++k)
      m = std::max(m, std::fabs(a.values_[k] - b.values_[k]));
    return m;
  }

 private:
  TorusGrid grid_;
  int modes_;
  std::vector<double> values_;
};

}  // namespace hjs
