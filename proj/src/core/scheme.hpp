#pragma once

#include <string>
#include <vector>

#include "core/gridfn.hpp"
#include "core/markov.hpp"
#include "core/model.hpp"

namespace hjs {

// Monotone semi-Lagrangian discretization of the weakly coupled system. The
// one-step operator is
//   (T_{l,c} w)_i(x) = min_v [ h (L_i(x,v) + c)
//                              + e^{-l h} sum_j (P_h)_ij Interp[w_j](x - h v) ]
// with P_h = e^{-hB}. Interpolation weights are nonnegative and sum to 1, so
// T is monotone and an e^{-l h} contraction for every l > 0.
class DiscreteScheme {
 public:
  DiscreteScheme(ProblemSpec problem, TorusGrid grid, ControlGrid controls, double h);

  const ProblemSpec& problem() const { return problem_; }
  const TorusGrid& grid() const { return grid_; }
  const ControlGrid& controls() const { return controls_; }
  double h() const { return h_; }
  int modes() const { return problem_.modes(); }
  const StochasticMatrix& mode_kernel() const { return kernel_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Precomputed running cost h * L_i(x_k, v_a).
  double step_cost(int mode, int node, int a) const {
    return cost_[(static_cast<std::size_t>(mode) * grid_.node_count() + node) * controls_.size() + a];
  }

  // The foot x - h v shares one offset stencil per control (shift-invariant).
  struct ControlStencil {
    std::array<int, 2> shift{0, 0};    // integer node offset per axis
    std::array<double, 2> frac{0.0, 0.0};
  };
  const ControlStencil& control_stencil(int a) const { return stencils_[a]; }

  // Interpolate one mode layer at the foot of control a from node k.
  double foot_value(const double* values, int node, int a) const;

  // One application of T_{lambda,c}; out may not alias w. If argmin is given
  // it receives the minimizing control index per (mode, node), lowest index
  // winning ties.
  void apply(const GridVectorFunction& w, double lambda, double c, GridVectorFunction& out,
             std::vector<int>* argmin = nullptr) const;

  GridVectorFunction apply(const GridVectorFunction& w, double lambda, double c) const;

 private:
  ProblemSpec problem_;
  TorusGrid grid_;
  ControlGrid controls_;
  double h_;
  StochasticMatrix kernel_;
  std::vector<double> cost_;  // [mode][node][control]
  std::vector<ControlStencil> stencils_;
  std::vector<std::string> warnings_;
};

DiscreteScheme build_scheme(ProblemSpec problem, TorusGrid grid, ControlGrid controls, double h);

}  // namespace hjs
