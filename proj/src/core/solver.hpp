#pragma once

#include <utility>
#include <vector>

#include "core/scheme.hpp"

namespace hjs {

// Discrete effective rate: the per-unit-time discount implied by the factor
// e^{-lambda h} per step; the discrete shift identity holds exactly with it.
inline double lambda_effective(double lambda, double h) {
  return (1.0 - std::exp(-lambda * h)) / h;
}

struct SolveOptions {
  double tol = 1e-9;           // bound on ||w - fixed point||_inf
  long max_iterations = 400000;
  bool record_residuals = false;
};

struct SolveResult {
  GridVectorFunction u;
  long iterations = 0;
  double residual = 0.0;            // final ||T w - w||_inf
  std::vector<double> residuals;    // per-iteration, when recorded
};

// Value iteration to the unique fixed point of T_{lambda,c}. The stopping
// residual is tol * (1 - beta) / beta / 2 so the returned iterate is within
// tol/2 of the fixed point in sup norm. Throws NonConvergence if the budget
// runs out first.
SolveResult solve_discounted(const DiscreteScheme& scheme, double lambda, double c,
                             SolveOptions options = {});

// || u^{l,c} - u^{l,c'} - ((c - c') / lambda') 1 ||_inf; <= 2 tol by the exact
// discrete shift identity.
double shift_identity_check(const DiscreteScheme& scheme, double lambda, double c1, double c2,
                            SolveOptions options = {});

struct CriticalEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  // per lambda: (lambda, -lambda' * mean u^{lambda,0})
  std::vector<std::pair<double, double>> samples;
};

// Solves with c = 0 over the rate sweep and Richardson-extrapolates
// -lambda' * mean(u^{lambda,0}) to lambda -> 0.
CriticalEstimate estimate_critical_value(const DiscreteScheme& scheme,
                                         const std::vector<double>& lambdas,
                                         SolveOptions options = {});

// u^{lambda,c} minus its global min over nodes and modes.
GridVectorFunction normalized_limit(const DiscreteScheme& scheme, double lambda, double c,
                                    SolveOptions options = {});

}  // namespace hjs
