#include "core/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace hjs {

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions options)
    : lp_(&lp), opt_(options), rows_(lp.rows), ncols_(static_cast<int>(lp.cols.size())) {
  require(rows_ >= 1, ErrorCode::ValidationError, "LP needs at least one row");
  require(static_cast<int>(lp.cost.size()) == ncols_, ErrorCode::ValidationError,
          "cost size does not match column count");
  require(static_cast<int>(lp.rhs.size()) == rows_, ErrorCode::ValidationError,
          "rhs size does not match row count");
  for (const SparseColumn& col : lp.cols)
    for (int r : col.idx)
      require(r >= 0 && r < rows_, ErrorCode::ValidationError, "column row index out of range");
  cost_ = lp.cost;
  rhs_ = lp.rhs;
}

double SimplexSolver::cost_of(int col, const std::vector<double>& costs) const {
  return is_artificial(col) ? artificial_cost_ : costs[col];
}

double SimplexSolver::column_dot(const std::vector<double>& y, int col) const {
  if (is_artificial(col)) {
    int r = col - ncols_;
    return art_sign_[r] * y[r];
  }
  const SparseColumn& c = lp_->cols[col];
  double s = 0.0;
  for (std::size_t k = 0; k < c.idx.size(); ++k) s += y[c.idx[k]] * c.val[k];
  return s;
}

void SimplexSolver::column_into(int col, std::vector<double>& dense) const {
  std::fill(dense.begin(), dense.end(), 0.0);
  if (is_artificial(col)) {
    int r = col - ncols_;
    dense[r] = art_sign_[r];
    return;
  }
  const SparseColumn& c = lp_->cols[col];
  for (std::size_t k = 0; k < c.idx.size(); ++k) dense[c.idx[k]] += c.val[k];
}

void SimplexSolver::ftran(int col, std::vector<double>& out) const {
  out.assign(rows_, 0.0);
  if (is_artificial(col)) {
    int r = col - ncols_;
    double s = art_sign_[r];
    for (int i = 0; i < rows_; ++i) out[i] = s * binv_[i * rows_ + r];
    return;
  }
  const SparseColumn& c = lp_->cols[col];
  for (std::size_t k = 0; k < c.idx.size(); ++k) {
    const int r = c.idx[k];
    const double v = c.val[k];
    for (int i = 0; i < rows_; ++i) out[i] += v * binv_[i * rows_ + r];
  }
}

void SimplexSolver::compute_duals(const std::vector<double>& costs, std::vector<double>& y) const {
  y.assign(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    double cb = cost_of(basis_[r], costs);
    if (cb == 0.0) continue;
    const double* row = binv_.data() + static_cast<std::size_t>(r) * rows_;
    for (int j = 0; j < rows_; ++j) y[j] += cb * row[j];
  }
}

void SimplexSolver::pivot(int entering, int leave_row, const std::vector<double>& direction) {
  const double piv = direction[leave_row];
  const double theta = xb_[leave_row] / piv;
  for (int i = 0; i < rows_; ++i) xb_[i] -= theta * direction[i];
  xb_[leave_row] = theta;

  double* rowr = binv_.data() + static_cast<std::size_t>(leave_row) * rows_;
  for (int j = 0; j < rows_; ++j) rowr[j] /= piv;
  for (int i = 0; i < rows_; ++i) {
    if (i == leave_row) continue;
    const double d = direction[i];
    if (d == 0.0) continue;
    double* rowi = binv_.data() + static_cast<std::size_t>(i) * rows_;
    for (int j = 0; j < rows_; ++j) rowi[j] -= d * rowr[j];
  }

  nonbasic_ok_[basis_[leave_row]] = 1;
  nonbasic_ok_[entering] = 0;
  basis_[leave_row] = entering;
  ++updates_since_refactor_;
}

void SimplexSolver::refactorize() {
  // Gauss-Jordan inverse of the basis matrix with partial pivoting.
  std::vector<double> M(static_cast<std::size_t>(rows_) * rows_, 0.0);
  std::vector<double> col(rows_);
  for (int r = 0; r < rows_; ++r) {
    column_into(basis_[r], col);
    for (int i = 0; i < rows_; ++i) M[i * rows_ + r] = col[i];
  }
  std::vector<double> inv(static_cast<std::size_t>(rows_) * rows_, 0.0);
  for (int i = 0; i < rows_; ++i) inv[i * rows_ + i] = 1.0;
  for (int c = 0; c < rows_; ++c) {
    int piv = c;
    for (int i = c + 1; i < rows_; ++i)
      if (std::fabs(M[i * rows_ + c]) > std::fabs(M[piv * rows_ + c])) piv = i;
    if (std::fabs(M[piv * rows_ + c]) < 1e-13)
      fail(ErrorCode::Internal, "singular basis during refactorization");
    if (piv != c) {
      for (int j = 0; j < rows_; ++j) {
        std::swap(M[piv * rows_ + j], M[c * rows_ + j]);
        std::swap(inv[piv * rows_ + j], inv[c * rows_ + j]);
      }
    }
    const double p = M[c * rows_ + c];
    for (int j = 0; j < rows_; ++j) {
      M[c * rows_ + j] /= p;
      inv[c * rows_ + j] /= p;
    }
    for (int i = 0; i < rows_; ++i) {
      if (i == c) continue;
      const double f = M[i * rows_ + c];
      if (f == 0.0) continue;
      for (int j = 0; j < rows_; ++j) {
        M[i * rows_ + j] -= f * M[c * rows_ + j];
        inv[i * rows_ + j] -= f * inv[c * rows_ + j];
      }
    }
  }
  binv_ = std::move(inv);
  updates_since_refactor_ = 0;
}

void SimplexSolver::recompute_xb() {
  xb_.assign(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* row = binv_.data() + static_cast<std::size_t>(i) * rows_;
    double s = 0.0;
    for (int j = 0; j < rows_; ++j) s += row[j] * rhs_[j];
    xb_[i] = s;
  }
}

LpStatus SimplexSolver::primal_iterate(const std::vector<double>& costs, bool phase_one) {
  std::vector<double> y, dir;
  int stalls = 0;
  bool bland = false;
  for (;;) {
    if (iterations_++ > opt_.max_iterations) return LpStatus::IterationLimit;
    compute_duals(costs, y);

    int entering = kNoColumn;
    double best = -opt_.opt_tol;
    for (int j = 0; j < ncols_; ++j) {
      if (!nonbasic_ok_[j]) continue;
      const double d = costs[j] - column_dot(y, j);
      if (bland) {
        if (d < -opt_.opt_tol) {
          entering = j;
          break;
        }
      } else if (d < best) {
        best = d;
        entering = j;
      }
    }
    if (entering == kNoColumn) return LpStatus::Optimal;

    ftran(entering, dir);
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (int r = 0; r < rows_; ++r) {
      if (dir[r] > opt_.pivot_tol) {
        const double t = std::max(xb_[r], 0.0) / dir[r];
        if (t < theta - 1e-12 || (t < theta + 1e-12 && leave >= 0 && basis_[r] < basis_[leave])) {
          theta = t;
          leave = r;
        }
      }
    }
    if (leave < 0) return phase_one ? LpStatus::Infeasible : LpStatus::Unbounded;

    const double step = theta;
    pivot(entering, leave, dir);
    if (step <= 1e-12) {
      if (++stalls >= opt_.bland_after_stalls) bland = true;
    } else {
      stalls = 0;
      bland = false;
    }
    if (updates_since_refactor_ >= opt_.refactor_every) {
      refactorize();
      recompute_xb();
    }
  }
}

LpStatus SimplexSolver::solve() {
  basis_.resize(rows_);
  art_sign_.assign(rows_, 1);
  nonbasic_ok_.assign(static_cast<std::size_t>(ncols_) + rows_, 1);
  binv_.assign(static_cast<std::size_t>(rows_) * rows_, 0.0);
  xb_.assign(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    basis_[r] = ncols_ + r;
    nonbasic_ok_[ncols_ + r] = 0;
    art_sign_[r] = rhs_[r] >= 0.0 ? 1 : -1;
    binv_[r * rows_ + r] = art_sign_[r];
    xb_[r] = std::fabs(rhs_[r]);
  }
  // artificials may leave but never re-enter
  for (int r = 0; r < rows_; ++r) nonbasic_ok_[ncols_ + r] = 0;
  updates_since_refactor_ = 0;
  basis_valid_ = false;

  // phase 1: minimize the total artificial mass (structural costs 0,
  // artificial cost 1)
  iterations_ = 0;
  std::vector<double> phase1_cost(ncols_, 0.0);
  artificial_cost_ = 1.0;
  LpStatus st = primal_iterate(phase1_cost, true);
  artificial_cost_ = 0.0;
  if (st == LpStatus::IterationLimit) return st;
  double infeas = 0.0;
  for (int r = 0; r < rows_; ++r)
    if (is_artificial(basis_[r])) infeas += std::max(xb_[r], 0.0);
  if (st == LpStatus::Infeasible || infeas > opt_.feas_tol * (1.0 + std::fabs(infeas)))
    return LpStatus::Infeasible;

  st = primal_iterate(cost_, false);
  basis_valid_ = (st == LpStatus::Optimal);
  return st;
}

LpStatus SimplexSolver::reoptimize_with_cost(const std::vector<double>& cost) {
  require(basis_valid_, ErrorCode::Internal, "reoptimize requires a solved basis");
  require(static_cast<int>(cost.size()) == ncols_, ErrorCode::ValidationError,
          "cost size mismatch");
  cost_ = cost;
  iterations_ = 0;
  LpStatus st = primal_iterate(cost_, false);
  basis_valid_ = (st == LpStatus::Optimal);
  return st;
}

LpStatus SimplexSolver::reoptimize_with_rhs(const std::vector<double>& rhs) {
  require(basis_valid_, ErrorCode::Internal, "reoptimize requires a solved basis");
  require(static_cast<int>(rhs.size()) == rows_, ErrorCode::ValidationError, "rhs size mismatch");
  rhs_ = rhs;
  recompute_xb();
  iterations_ = 0;
  LpStatus st = dual_iterate();
  basis_valid_ = (st == LpStatus::Optimal);
  return st;
}

LpStatus SimplexSolver::dual_iterate() {
  std::vector<double> y, dir, rho(rows_);
  for (;;) {
    if (iterations_++ > opt_.max_iterations) return LpStatus::IterationLimit;
    int leave = -1;
    double worst = -opt_.feas_tol;
    for (int r = 0; r < rows_; ++r)
      if (xb_[r] < worst) {
        worst = xb_[r];
        leave = r;
      }
    if (leave < 0) return LpStatus::Optimal;

    const double* rl = binv_.data() + static_cast<std::size_t>(leave) * rows_;
    std::copy(rl, rl + rows_, rho.begin());
    compute_duals(cost_, y);

    int entering = kNoColumn;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ncols_; ++j) {
      if (!nonbasic_ok_[j]) continue;
      const SparseColumn& c = lp_->cols[j];
      double alpha = 0.0;
      for (std::size_t k = 0; k < c.idx.size(); ++k) alpha += rho[c.idx[k]] * c.val[k];
      if (alpha >= -opt_.pivot_tol) continue;
      double d = cost_[j] - column_dot(y, j);
      if (d < 0.0) d = 0.0;  // within opt_tol of feasibility
      const double ratio = d / (-alpha);
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && entering >= 0 && j < entering)) {
        best_ratio = ratio;
        entering = j;
      }
    }
    if (entering == kNoColumn) return LpStatus::Infeasible;

    ftran(entering, dir);
    if (std::fabs(dir[leave]) < opt_.pivot_tol) {
      refactorize();
      recompute_xb();
      ftran(entering, dir);
      if (std::fabs(dir[leave]) < opt_.pivot_tol)
        fail(ErrorCode::Internal, "dual simplex pivot vanished after refactorization");
    }
    pivot(entering, leave, dir);
    if (updates_since_refactor_ >= opt_.refactor_every) {
      refactorize();
      recompute_xb();
    }
  }
}

double SimplexSolver::objective() const {
  double s = 0.0;
  for (int r = 0; r < rows_; ++r) s += cost_of(basis_[r], cost_) * xb_[r];
  return s;
}

std::vector<double> SimplexSolver::primal() const {
  std::vector<double> x(ncols_, 0.0);
  for (int r = 0; r < rows_; ++r)
    if (!is_artificial(basis_[r])) x[basis_[r]] = xb_[r];
  return x;
}

std::vector<double> SimplexSolver::duals() const {
  std::vector<double> y;
  compute_duals(cost_, y);
  return y;
}

double SimplexSolver::primal_residual() const {
  std::vector<double> ax(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    const int col = basis_[r];
    const double v = xb_[r];
    if (v == 0.0) continue;
    if (is_artificial(col)) {
      ax[col - ncols_] += art_sign_[col - ncols_] * v;
    } else {
      const SparseColumn& c = lp_->cols[col];
      for (std::size_t k = 0; k < c.idx.size(); ++k) ax[c.idx[k]] += c.val[k] * v;
    }
  }
  double worst = 0.0;
  for (int r = 0; r < rows_; ++r) worst = std::max(worst, std::fabs(ax[r] - rhs_[r]));
  for (int r = 0; r < rows_; ++r)
    if (is_artificial(basis_[r])) worst = std::max(worst, std::fabs(xb_[r]));
  return worst;
}

double SimplexSolver::dual_feasibility_margin() const {
  std::vector<double> y;
  compute_duals(cost_, y);
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < ncols_; ++j)
    margin = std::min(margin, cost_[j] - column_dot(y, j));
  return margin;
}

}  // namespace hjs
