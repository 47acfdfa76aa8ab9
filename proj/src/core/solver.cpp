#include "core/solver.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace hjs {

SolveResult solve_discounted(const DiscreteScheme& scheme, double lambda, double c,
                             SolveOptions options) {
  require(lambda > 0.0, ErrorCode::ValidationError, "discount rate must be positive");
  const double beta = std::exp(-lambda * scheme.h());
  const double stop = 0.5 * options.tol * (1.0 - beta) / beta;

  SolveResult res{GridVectorFunction(scheme.grid(), scheme.modes())};
  GridVectorFunction next(scheme.grid(), scheme.modes());
  for (long it = 1; it <= options.max_iterations; ++it) {
    scheme.apply(res.u, lambda, c, next);
    double r = GridVectorFunction::sup_distance(res.u, next);
    std::swap(res.u, next);
    res.iterations = it;
    res.residual = r;
    if (options.record_residuals) res.residuals.push_back(r);
    if (r <= stop) return res;
  }
  fail(ErrorCode::NonConvergence,
       "value iteration did not reach tol " + std::to_string(options.tol) + " within " +
           std::to_string(options.max_iterations) + " iterations (lambda*h too small for budget)");
}

double shift_identity_check(const DiscreteScheme& scheme, double lambda, double c1, double c2,
                            SolveOptions options) {
  GridVectorFunction u1 = solve_discounted(scheme, lambda, c1, options).u;
  GridVectorFunction u2 = solve_discounted(scheme, lambda, c2, options).u;
  const double shift = (c1 - c2) / lambda_effective(lambda, scheme.h());
  double worst = 0.0;
  for (std::size_t k = 0; k < u1.raw().size(); ++k)
    worst = std::max(worst, std::fabs(u1.raw()[k] - u2.raw()[k] - shift));
  return worst;
}

CriticalEstimate estimate_critical_value(const DiscreteScheme& scheme,
                                         const std::vector<double>& lambdas,
                                         SolveOptions options) {
  require(lambdas.size() >= 2, ErrorCode::ValidationError,
          "need at least two rates to extrapolate");
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i)
    require(lambdas[i] > lambdas[i + 1] && lambdas[i + 1] > 0.0, ErrorCode::ValidationError,
            "rates must be positive and strictly decreasing");

  CriticalEstimate est;
  double last_spread = 0.0;
  for (double lambda : lambdas) {
    GridVectorFunction u = solve_discounted(scheme, lambda, 0.0, options).u;
    double mean = 0.0;
    for (double v : u.raw()) mean += v;
    mean /= static_cast<double>(u.raw().size());
    const double le = lambda_effective(lambda, scheme.h());
    est.samples.emplace_back(lambda, -le * mean);
    last_spread = le * (u.max_value() - u.min_value());
  }

  // Neville tableau in lambda toward 0
  std::vector<double> tab, xs;
  for (const auto& [l, e] : est.samples) {
    xs.push_back(l);
    tab.push_back(e);
  }
  const std::size_t m = tab.size();
  double prev_level = tab.back();
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i + k < m; ++i)
      tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * xs[i + k] / (xs[i] - xs[i + k]);
    if (k + 1 == m) break;
    prev_level = tab[0];
  }
  est.value = tab[0];
  est.error_estimate = last_spread + std::fabs(tab[0] - prev_level);
  return est;
}

GridVectorFunction normalized_limit(const DiscreteScheme& scheme, double lambda, double c,
                                    SolveOptions options) {
  GridVectorFunction u = solve_discounted(scheme, lambda, c, options).u;
  u += -u.min_value();
  return u;
}

}  // namespace hjs
