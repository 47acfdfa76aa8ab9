#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/scheme.hpp"
#include "core/simplex.hpp"

namespace hjs {

// Nonnegative weights mu(x,v,i) over grid x controls x modes, total mass 1.
struct DiscreteMeasure {
  int modes = 1;
  int nodes = 0;
  int ncontrols = 0;
  std::vector<double> w;  // [(mode * nodes + node) * ncontrols + control]

  static DiscreteMeasure zeros(const DiscreteScheme& scheme);

  double& at(int mode, int node, int a) {
    return w[(static_cast<std::size_t>(mode) * nodes + node) * ncontrols + a];
  }
  double at(int mode, int node, int a) const {
    return w[(static_cast<std::size_t>(mode) * nodes + node) * ncontrols + a];
  }
  double mass() const;
  void normalize();

  // state-mode marginal: sum over controls, indexed [mode * nodes + node]
  std::vector<double> state_mode_marginal() const;
  // support cells with weight above the threshold, sorted
  std::vector<int> support(double threshold = 1e-9) const;
};

// Max over nodal test functions of the stationarity violation: for each
// (node y, mode j),  | sum_{x,v,i} mu (P_h)_ij alpha_{x-hv}(y) - sum_v mu(y,v,j) |.
double closedness_residual(const DiscreteScheme& scheme, const DiscreteMeasure& mu);

struct MatherSolution {
  DiscreteMeasure measure;
  double objective = 0.0;        // min integral of L
  double critical_value = 0.0;   // -objective, the discrete critical value
  GridVectorFunction dual_w;     // discrete critical subsolution from the dual
  double dual_g = 0.0;           // h * objective at optimality
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  double closedness = 0.0;
  long iterations = 0;
};

// Occupation-measure linear program
//   min <L, mu>   s.t.  stationarity at every (node, mode), total mass 1
// One stationarity row is dropped when assembling: the stationarity block's
// rows sum to zero identically, so the full system is rank deficient by one.
class MatherProblem {
 public:
  explicit MatherProblem(const DiscreteScheme& scheme);

  const LinearProgram& lp() const { return lp_; }
  const DiscreteScheme& scheme() const { return *scheme_; }

  MatherSolution solve(double tol = 1e-8);

  // Re-optimizes k random auxiliary objectives over the near-optimal face
  // { stationarity, mass 1, <L,mu> <= z* + face_tol }, deduplicated by
  // support. Requires solve() to have run.
  std::vector<DiscreteMeasure> extreme_measures(int k, std::uint64_t seed,
                                                double face_tol = 1e-8);

 private:
  DiscreteMeasure measure_from(const std::vector<double>& x) const;

  const DiscreteScheme* scheme_;
  LinearProgram lp_;
  std::optional<double> objective_;
};

MatherProblem build_lp(const DiscreteScheme& scheme);

}  // namespace hjs
