#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "core/gridfn.hpp"
#include "core/model.hpp"
#include "core/rng.hpp"

namespace hjs {

// Row-stochastic matrix e^{-tB}, rows sum to 1 within 1e-12, entries >= 0.
struct StochasticMatrix {
  int m = 1;
  double t = 0.0;
  std::vector<double> p;  // row-major

  double entry(int i, int j) const { return p[i * m + j]; }
  const double* row(int i) const { return p.data() + i * m; }
};

// e^{-tB} by scaling-and-squaring with the Taylor series truncated when the
// term drops below 1e-14; tiny negative entries (>= -1e-14) are clamped to 0.
StochasticMatrix transition_matrix(const CouplingMatrix& B, double t);

// Sampled cadlag mode path: initial mode, strictly increasing jump times with
// the mode in force after each jump, truncated at the horizon.
struct SwitchingPath {
  int initial_mode = 0;
  double horizon = 0.0;
  std::vector<std::pair<double, int>> jumps;  // (time, mode entered)

  int mode_at(double t) const {
    int mode = initial_mode;
    for (const auto& [tau, j] : jumps) {
      if (tau > t) break;
      mode = j;
    }
    return mode;
  }
  int jump_count() const { return static_cast<int>(jumps.size()); }
};

// Holding time in mode i ~ Exp(b_ii); next mode j != i with prob -b_ij / b_ii.
SwitchingPath sample_path(const CouplingMatrix& B, int initial_mode, double horizon,
                          SplitMix64& rng);

// Frequency vector of modes at time t across paths (all sharing i0, horizon >= t).
std::vector<double> empirical_marginal(const std::vector<SwitchingPath>& paths, double t);

// Trajectory indexed by a mode path; implementations must be nonanticipating
// (the position up to time t depends on the path only through [0, t]).
class AdmissibleCurve {
 public:
  virtual ~AdmissibleCurve() = default;
  virtual Point position(const SwitchingPath& path, double t) const = 0;
};

class ConstantCurve final : public AdmissibleCurve {
 public:
  explicit ConstantCurve(Point x) : x_(x) {}
  Point position(const SwitchingPath&, double) const override { return x_; }

 private:
  Point x_;
};

// Deterministic curve of the form t -> start + t * velocity (mod 1).
class LinearCurve final : public AdmissibleCurve {
 public:
  LinearCurve(Point start, Velocity vel) : x_(start), v_(vel) {}
  Point position(const SwitchingPath&, double t) const override {
    return Point{wrap01(x_[0] + t * v_[0]), wrap01(x_[1] + t * v_[1])};
  }

 private:
  Point x_;
  Velocity v_;
};

struct DynkinResult {
  double residual = 0.0;   // | mean over paths |
  double std_error = 0.0;  // Monte Carlo standard error of the mean
  int paths = 0;
  double quad_step = 0.0;
};

// Monte Carlo residual of the mode-switching differentiation identity: for
// time-independent g, per path the gradient part telescopes exactly between
// jumps, leaving  sum_jumps [g_new - g_old](gamma(tau)) + int (B g)(gamma) ds,
// whose expectation vanishes. The (B g) integral uses Simpson panels of width
// <= quad_dt between jumps.
DynkinResult dynkin_residual(const GridVectorFunction& g, const AdmissibleCurve& curve,
                             const CouplingMatrix& B, const std::vector<SwitchingPath>& paths,
                             double t0, double t1, double quad_dt = 1e-3);

}  // namespace hjs
