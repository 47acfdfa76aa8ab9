#include "core/scheme.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace hjs {

DiscreteScheme::DiscreteScheme(ProblemSpec problem, TorusGrid grid, ControlGrid controls, double h)
    : problem_(std::move(problem)), grid_(grid), controls_(std::move(controls)), h_(h) {
  require(h_ > 0.0, ErrorCode::ValidationError, "time step must be positive");
  require(problem_.dim == grid_.dim(), ErrorCode::DimensionMismatch,
          "problem and grid dimension differ");
  require(controls_.dim() == grid_.dim(), ErrorCode::DimensionMismatch,
          "control set and grid dimension differ");
  require(problem_.modes() == problem_.coupling.size(), ErrorCode::DimensionMismatch,
          "one Hamiltonian per coupling row required");
  require(controls_.v_max() * h_ < 0.5, ErrorCode::ValidationError,
          "one step would cross half the torus; shrink h or v_max");

  const int m = problem_.modes();
  double max_rate = 0.0;
  for (int i = 0; i < m; ++i) max_rate = std::max(max_rate, problem_.coupling.rate(i));
  if (h_ * max_rate >= 1.0)
    warnings_.push_back("h * max diagonal rate >= 1; mode mixing per step is strong");

  kernel_ = transition_matrix(problem_.coupling, h_);

  const int N = grid_.node_count();
  const int nv = controls_.size();
  cost_.resize(static_cast<std::size_t>(m) * N * nv);
  for (int i = 0; i < m; ++i) {
    const HamiltonianSpec& ham = problem_.hamiltonians[i];
    for (int k = 0; k < N; ++k) {
      Point x = grid_.node(k);
      for (int a = 0; a < nv; ++a)
        cost_[(static_cast<std::size_t>(i) * N + k) * nv + a] =
            h_ * ham.lagrangian(x, controls_.control(a), grid_.dim());
    }
  }

  stencils_.resize(nv);
  for (int a = 0; a < nv; ++a) {
    const Velocity& v = controls_.control(a);
    for (int ax = 0; ax < grid_.dim(); ++ax) {
      double s = -h_ * v[ax] / grid_.spacing();
      double fl = std::floor(s);
      stencils_[a].shift[ax] = static_cast<int>(fl);
      stencils_[a].frac[ax] = s - fl;
    }
  }
}

double DiscreteScheme::foot_value(const double* values, int node, int a) const {
  const ControlStencil& st = stencils_[a];
  const int n = grid_.nodes_per_axis();
  if (grid_.dim() == 1) {
    int b = node + st.shift[0];
    b = ((b % n) + n) % n;
    int b1 = b + 1 == n ? 0 : b + 1;
    double t = st.frac[0];
    return values[b] + t * (values[b1] - values[b]);
  }
  int k0 = node % n, k1 = node / n;
  int b0 = ((k0 + st.shift[0]) % n + n) % n;
  int b1 = ((k1 + st.shift[1]) % n + n) % n;
  int c0 = b0 + 1 == n ? 0 : b0 + 1;
  int c1 = b1 + 1 == n ? 0 : b1 + 1;
  double t0 = st.frac[0], t1 = st.frac[1];
  double lo = values[b0 + n * b1] + t0 * (values[c0 + n * b1] - values[b0 + n * b1]);
  double hi = values[b0 + n * c1] + t0 * (values[c0 + n * c1] - values[b0 + n * c1]);
  return lo + t1 * (hi - lo);
}

void DiscreteScheme::apply(const GridVectorFunction& w, double lambda, double c,
                           GridVectorFunction& out, std::vector<int>* argmin) const {
  const int m = modes();
  const int N = grid_.node_count();
  const int nv = controls_.size();
  require(w.modes() == m && w.nodes() == N, ErrorCode::DimensionMismatch,
          "grid function does not match scheme");
  const double beta = std::exp(-lambda * h_);
  const double hc = h_ * c;
  if (argmin) argmin->assign(static_cast<std::size_t>(m) * N, 0);

  // mode mixing first: mixed_i = sum_j (P_h)_ij w_j, then one interpolation
  // per (node, control) instead of m
  static thread_local std::vector<double> mixed;
  mixed.assign(static_cast<std::size_t>(m) * N, 0.0);
  for (int i = 0; i < m; ++i) {
    double* mi = mixed.data() + static_cast<std::size_t>(i) * N;
    for (int j = 0; j < m; ++j) {
      double pij = kernel_.entry(i, j);
      if (pij == 0.0) continue;
      const double* wj = w.mode_data(j);
      for (int k = 0; k < N; ++k) mi[k] += pij * wj[k];
    }
  }

  for (int i = 0; i < m; ++i) {
    const double* mi = mixed.data() + static_cast<std::size_t>(i) * N;
    const double* cost_i = cost_.data() + static_cast<std::size_t>(i) * N * nv;
    double* out_i = out.mode_data(i);
    for (int k = 0; k < N; ++k) {
      const double* ck = cost_i + static_cast<std::size_t>(k) * nv;
      double best = ck[0] + hc + beta * foot_value(mi, k, 0);
      int best_a = 0;
      for (int a = 1; a < nv; ++a) {
        double val = ck[a] + hc + beta * foot_value(mi, k, a);
        if (val < best) {
          best = val;
          best_a = a;
        }
      }
      out_i[k] = best;
      if (argmin) (*argmin)[static_cast<std::size_t>(i) * N + k] = best_a;
    }
  }
}

GridVectorFunction DiscreteScheme::apply(const GridVectorFunction& w, double lambda,
                                         double c) const {
  GridVectorFunction out(grid_, modes());
  apply(w, lambda, c, out);
  return out;
}

DiscreteScheme build_scheme(ProblemSpec problem, TorusGrid grid, ControlGrid controls, double h) {
  return DiscreteScheme(std::move(problem), grid, std::move(controls), h);
}

}  // namespace hjs
