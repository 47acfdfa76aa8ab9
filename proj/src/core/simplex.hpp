#pragma once

#include <cstddef>
#include <vector>

namespace hjs {

struct SparseColumn {
  std::vector<int> idx;
  std::vector<double> val;

  void add(int row, double v) {
    idx.push_back(row);
    val.push_back(v);
  }
};

// min cost . x   subject to   A x = rhs,  x >= 0
struct LinearProgram {
  int rows = 0;
  std::vector<SparseColumn> cols;
  std::vector<double> cost;
  std::vector<double> rhs;

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const SparseColumn& c : cols) n += c.idx.size();
    return n;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-10;
  long max_iterations = 200000;
  int refactor_every = 100;
  int bland_after_stalls = 64;  // consecutive degenerate pivots before Bland's rule
};

// Revised simplex with a dense basis inverse, product-form updates with
// periodic refactorization, Dantzig pricing and a Bland's-rule fallback under
// degeneracy. Warm restarts: a changed objective keeps the basis primal
// feasible (primal re-optimization), a changed right-hand side keeps it dual
// feasible (dual simplex re-optimization).
class SimplexSolver {
 public:
  SimplexSolver(const LinearProgram& lp, SimplexOptions options = {});

  LpStatus solve();  // two-phase from scratch
  LpStatus reoptimize_with_cost(const std::vector<double>& cost);
  LpStatus reoptimize_with_rhs(const std::vector<double>& rhs);

  double objective() const;
  std::vector<double> primal() const;
  std::vector<double> duals() const;  // y = c_B B^{-1}
  long iterations() const { return iterations_; }

  // max_r |(A x - b)_r| recomputed from scratch.
  double primal_residual() const;
  // min_j (c_j - y . a_j), >= -opt_tol at optimality.
  double dual_feasibility_margin() const;

 private:
  static constexpr int kNoColumn = -1;

  bool is_artificial(int col) const { return col >= ncols_; }
  double column_dot(const std::vector<double>& y, int col) const;
  void column_into(int col, std::vector<double>& dense) const;  // dense = a_col
  void ftran(int col, std::vector<double>& out) const;          // out = B^{-1} a_col
  void compute_duals(const std::vector<double>& costs, std::vector<double>& y) const;
  double cost_of(int col, const std::vector<double>& costs) const;
  void pivot(int entering, int leave_row, const std::vector<double>& direction);
  void refactorize();
  void recompute_xb();
  LpStatus primal_iterate(const std::vector<double>& costs, bool phase_one);
  LpStatus dual_iterate();

  const LinearProgram* lp_;
  SimplexOptions opt_;
  int rows_ = 0;
  int ncols_ = 0;

  std::vector<double> cost_;      // working structural costs (phase 2)
  std::vector<double> rhs_;       // working right-hand side
  std::vector<int> basis_;        // column per row (>= ncols_: artificial)
  std::vector<char> nonbasic_ok_; // artificial columns barred from entering
  std::vector<double> binv_;      // dense rows x rows, row-major
  std::vector<double> xb_;        // basic values
  std::vector<int> art_sign_;     // artificial column r is art_sign[r] * e_r
  double artificial_cost_ = 0.0;  // 1 during phase 1
  long iterations_ = 0;
  int updates_since_refactor_ = 0;
  bool basis_valid_ = false;
};

}  // namespace hjs
