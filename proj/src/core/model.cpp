#include "core/model.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace hjs {

// ---------------------------------------------------------------------------
// TorusGrid

TorusGrid::TorusGrid(int dim, int nodes_per_axis) : dim_(dim), n_(nodes_per_axis) {
  require(dim == 1 || dim == 2, ErrorCode::ValidationError,
          "torus dimension must be 1 or 2, got " + std::to_string(dim));
  require(n_ >= 4, ErrorCode::ValidationError,
          "grid needs at least 4 nodes per axis, got " + std::to_string(n_));
  count_ = dim_ == 1 ? n_ : n_ * n_;
  dx_ = 1.0 / n_;
}

Point TorusGrid::node(int flat) const {
  Point p{0.0, 0.0};
  if (dim_ == 1) {
    p[0] = flat * dx_;
  } else {
    p[0] = (flat % n_) * dx_;
    p[1] = (flat / n_) * dx_;
  }
  return p;
}

int TorusGrid::flat_index(int i0, int i1) const {
  i0 = ((i0 % n_) + n_) % n_;
  i1 = ((i1 % n_) + n_) % n_;
  return dim_ == 1 ? i0 : i0 + n_ * i1;
}

double TorusGrid::distance(const Point& a, const Point& b) const {
  double s = 0.0;
  for (int ax = 0; ax < dim_; ++ax) {
    double d = std::fabs(wrap01(a[ax]) - wrap01(b[ax]));
    d = std::min(d, 1.0 - d);
    s += d * d;
  }
  return std::sqrt(s);
}

TorusGrid::Stencil TorusGrid::stencil_at(const Point& x) const {
  Stencil s;
  for (int ax = 0; ax < dim_; ++ax) {
    double g = wrap01(x[ax]) * n_;
    int b = static_cast<int>(std::floor(g));
    double t = g - b;
    if (b >= n_) {  // guard against wrap01 rounding to exactly 1
      b = 0;
      t = 0.0;
    }
    s.base[ax] = b;
    s.frac[ax] = t;
  }
  return s;
}

int TorusGrid::nearest_node(const Point& x) const {
  Stencil s = stencil_at(x);
  int i0 = s.base[0] + (s.frac[0] > 0.5 ? 1 : 0);
  int i1 = dim_ == 2 ? s.base[1] + (s.frac[1] > 0.5 ? 1 : 0) : 0;
  return flat_index(i0, i1);
}

double TorusGrid::interpolate(const double* values, const Stencil& s) const {
  if (dim_ == 1) {
    int b = s.base[0];
    int b1 = b + 1 == n_ ? 0 : b + 1;
    double t = s.frac[0];
    return values[b] + t * (values[b1] - values[b]);
  }
  int b0 = s.base[0], b1 = s.base[1];
  int c0 = b0 + 1 == n_ ? 0 : b0 + 1;
  int c1 = b1 + 1 == n_ ? 0 : b1 + 1;
  double t0 = s.frac[0], t1 = s.frac[1];
  double lo = values[b0 + n_ * b1] + t0 * (values[c0 + n_ * b1] - values[b0 + n_ * b1]);
  double hi = values[b0 + n_ * c1] + t0 * (values[c0 + n_ * c1] - values[b0 + n_ * c1]);
  return lo + t1 * (hi - lo);
}

double TorusGrid::interpolate(const double* values, const Point& x) const {
  return interpolate(values, stencil_at(x));
}

// ---------------------------------------------------------------------------
// ControlGrid

ControlGrid::ControlGrid(int dim, std::vector<Velocity> controls, double v_max)
    : dim_(dim), controls_(std::move(controls)), v_max_(v_max), zero_index_(-1) {
  require(!controls_.empty(), ErrorCode::ValidationError, "control set is empty");
  const double tol = 1e-12 * (1.0 + v_max_);
  for (std::size_t a = 0; a < controls_.size(); ++a) {
    const Velocity& v = controls_[a];
    require(norm(v, dim_) <= v_max_ + tol, ErrorCode::ValidationError,
            "control exceeds v_max");
    if (norm(v, dim_) == 0.0) zero_index_ = static_cast<int>(a);
    // symmetry v -> -v
    bool found = false;
    for (const Velocity& w : controls_) {
      bool eq = true;
      for (int ax = 0; ax < dim_; ++ax)
        if (w[ax] != -v[ax]) eq = false;
      if (eq) {
        found = true;
        break;
      }
    }
    require(found, ErrorCode::ValidationError, "control set is not symmetric under v -> -v");
  }
  require(zero_index_ >= 0, ErrorCode::ValidationError, "control set must contain 0");
}

ControlGrid ControlGrid::symmetric(int dim, int per_axis, double v_max) {
  require(per_axis >= 3 && per_axis % 2 == 1, ErrorCode::ValidationError,
          "controls per axis must be odd and >= 3, got " + std::to_string(per_axis));
  require(v_max > 0, ErrorCode::ValidationError, "v_max must be positive");
  std::vector<double> axis(per_axis);
  int half = per_axis / 2;
  for (int k = 0; k < per_axis; ++k) axis[k] = (k - half) * (v_max / half);
  axis[half] = 0.0;
  std::vector<Velocity> ctrl;
  if (dim == 1) {
    for (double v : axis) ctrl.push_back({v, 0.0});
  } else {
    for (double v1 : axis)
      for (double v0 : axis) {
        Velocity v{v0, v1};
        if (norm(v, 2) <= v_max * (1.0 + 1e-12)) ctrl.push_back(v);
      }
  }
  return ControlGrid(dim, std::move(ctrl), v_max);
}

// ---------------------------------------------------------------------------
// ScalarField / VectorField

ScalarField ScalarField::expression(const std::string& text, int dim) {
  ScalarField f;
  f.dim_ = dim;
  f.expr_ = parse_expression(text);
  f.source_ = text;
  require(f.expr_->max_axis < dim, ErrorCode::ValidationError,
          "expression '" + text + "' references coordinate axis beyond dimension " +
              std::to_string(dim));
  return f;
}

ScalarField ScalarField::constant(double value) {
  ScalarField f;
  f.dim_ = 2;
  f.expr_ = parse_expression(std::to_string(value));
  f.source_ = std::to_string(value);
  return f;
}

ScalarField ScalarField::samples(TorusGrid grid, std::vector<double> values) {
  require(static_cast<int>(values.size()) == grid.node_count(), ErrorCode::ValidationError,
          "sample count does not match grid node count");
  for (double v : values)
    require(std::isfinite(v), ErrorCode::ValidationError, "sample values must be finite");
  ScalarField f;
  f.dim_ = grid.dim();
  f.sample_grid_ = grid;
  f.sample_values_ = std::move(values);
  f.source_ = "<samples>";
  return f;
}

double ScalarField::operator()(const Point& x) const {
  if (expr_) {
    double coords[2] = {wrap01(x[0]), wrap01(x[1])};
    return (*expr_)(coords);
  }
  return sample_grid_->interpolate(sample_values_.data(), x);
}

double ScalarField::lipschitz_estimate(int probe_n) const {
  TorusGrid probe(dim_, probe_n);
  double dx = probe.spacing();
  double worst = 0.0;
  for (int k = 0; k < probe.node_count(); ++k) {
    Point p = probe.node(k);
    double f0 = (*this)(p);
    for (int ax = 0; ax < dim_; ++ax) {
      Point q = p;
      q[ax] = wrap01(q[ax] + dx);
      worst = std::max(worst, std::fabs((*this)(q)-f0) / dx);
    }
  }
  return worst;
}

double ScalarField::periodicity_defect(int probe_n) const {
  if (!expr_) return 0.0;
  double worst = 0.0;
  for (int k = 0; k < probe_n; ++k) {
    double t = static_cast<double>(k) / probe_n;
    for (int ax = 0; ax < dim_; ++ax) {
      double lo[2] = {0.0, 0.0}, hi[2] = {0.0, 0.0};
      lo[ax] = 0.0;
      hi[ax] = 1.0;
      if (dim_ == 2) {
        lo[1 - ax] = t;
        hi[1 - ax] = t;
      }
      worst = std::max(worst, std::fabs((*expr_)(hi) - (*expr_)(lo)));
      if (dim_ == 1) break;
    }
  }
  return worst;
}

double ScalarField::min_on(const TorusGrid& grid) const {
  double m = (*this)(grid.node(0));
  for (int k = 1; k < grid.node_count(); ++k) m = std::min(m, (*this)(grid.node(k)));
  return m;
}

double ScalarField::max_on(const TorusGrid& grid) const {
  double m = (*this)(grid.node(0));
  for (int k = 1; k < grid.node_count(); ++k) m = std::max(m, (*this)(grid.node(k)));
  return m;
}

VectorField::VectorField(std::vector<ScalarField> components, int dim)
    : comps_(std::move(components)), dim_(dim) {
  require(static_cast<int>(comps_.size()) == dim, ErrorCode::ValidationError,
          "drift needs one component per dimension");
}

Velocity VectorField::operator()(const Point& x) const {
  Velocity v{0.0, 0.0};
  for (int ax = 0; ax < dim_; ++ax) v[ax] = comps_[ax](x);
  return v;
}

double VectorField::sup_norm_estimate(int probe_n) const {
  TorusGrid probe(dim_, probe_n);
  double worst = 0.0;
  for (int k = 0; k < probe.node_count(); ++k)
    worst = std::max(worst, norm((*this)(probe.node(k)), dim_));
  return worst;
}

// ---------------------------------------------------------------------------
// Hamiltonian catalog

const char* hamiltonian_kind_name(HamiltonianKind k) {
  switch (k) {
    case HamiltonianKind::Quadratic: return "quadratic";
    case HamiltonianKind::QuadraticDrift: return "quadratic-drift";
    case HamiltonianKind::Power: return "power";
  }
  return "?";
}

HamiltonianKind hamiltonian_kind_from_name(const std::string& name) {
  if (name == "quadratic") return HamiltonianKind::Quadratic;
  if (name == "quadratic-drift") return HamiltonianKind::QuadraticDrift;
  if (name == "power") return HamiltonianKind::Power;
  fail(ErrorCode::ValidationError, "unknown hamiltonian kind '" + name + "'");
}

double HamiltonianSpec::eval(const Point& x, const Velocity& p, int dim) const {
  switch (kind) {
    case HamiltonianKind::Quadratic:
      return 0.5 * dot(p, p, dim) - potential(x);
    case HamiltonianKind::QuadraticDrift: {
      Velocity b = (*drift)(x);
      return 0.5 * dot(p, p, dim) + dot(b, p, dim) - potential(x);
    }
    case HamiltonianKind::Power: {
      double q = exponent;
      return std::pow(norm(p, dim), q) / q - potential(x);
    }
  }
  return 0.0;
}

double HamiltonianSpec::lagrangian(const Point& x, const Velocity& v, int dim) const {
  switch (kind) {
    case HamiltonianKind::Quadratic:
      return 0.5 * dot(v, v, dim) + potential(x);
    case HamiltonianKind::QuadraticDrift: {
      Velocity b = (*drift)(x);
      Velocity d{v[0] - b[0], v[1] - b[1]};
      return 0.5 * dot(d, d, dim) + potential(x);
    }
    case HamiltonianKind::Power: {
      double q = exponent;
      double qc = q / (q - 1.0);  // conjugate exponent
      return std::pow(norm(v, dim), qc) / qc + potential(x);
    }
  }
  return 0.0;
}

double eval_hamiltonian(const HamiltonianSpec& h, const Point& x, const Velocity& p, int dim) {
  require(std::isfinite(p[0]) && std::isfinite(p[1]), ErrorCode::ValidationError,
          "momentum must be finite");
  return h.eval(x, p, dim);
}

double legendre_transform(const HamiltonianSpec& h, const Point& x, const Velocity& v, int dim) {
  return h.lagrangian(x, v, dim);
}

namespace {

// Golden-section maximization of a concave 1-D function on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double legendre_numeric(const HamiltonianSpec& h, const Point& x, const Velocity& v, int dim,
                        double tol, int max_doublings) {
  double radius = 2.0 * (1.0 + norm(v, dim));
  for (int attempt = 0; attempt < max_doublings; ++attempt) {
    Velocity p{0.0, 0.0};
    // objective <p,v> - H(x,p) is concave in p; coordinate-wise golden section
    auto obj = [&](const Velocity& q) { return dot(q, v, dim) - h.eval(x, q, dim); };
    for (int sweep = 0; sweep < (dim == 1 ? 1 : 24); ++sweep) {
      for (int ax = 0; ax < dim; ++ax) {
        Velocity q = p;
        p[ax] = golden_max(
            [&](double t) {
              q[ax] = t;
              return obj(q);
            },
            -radius, radius, tol * radius);
      }
    }
    bool interior = true;
    for (int ax = 0; ax < dim; ++ax)
      if (std::fabs(p[ax]) > radius * (1.0 - 1e-3)) interior = false;
    if (interior) return obj(p);
    radius *= 2.0;
  }
  fail(ErrorCode::MaximizerOnBoundary,
       "conjugate search maximizer stayed on the p-radius after doubling");
}

// ---------------------------------------------------------------------------
// CouplingMatrix

CouplingMatrix CouplingMatrix::validate(const std::vector<double>& entries, int m) {
  require(m >= 1, ErrorCode::ValidationError, "mode count must be >= 1");
  require(static_cast<int>(entries.size()) == m * m, ErrorCode::ValidationError,
          "coupling matrix must be m*m entries, got " + std::to_string(entries.size()));
  for (double e : entries)
    require(std::isfinite(e), ErrorCode::ValidationError, "coupling entries must be finite");

  std::vector<double> data = entries;
  for (int i = 0; i < m; ++i) {
    double off = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      if (data[i * m + j] > 0.0)
        fail(ErrorCode::SignViolation, "off-diagonal entry b[" + std::to_string(i) + "][" +
                                           std::to_string(j) + "] is positive");
      off += data[i * m + j];
    }
    double rowsum = off + data[i * m + i];
    if (std::fabs(rowsum) > 1e-12)
      fail(ErrorCode::RowSumViolation,
           "row " + std::to_string(i) + " sums to " + std::to_string(rowsum));
    // canonicalize: diagonal is exactly the negated off-diagonal sum, so the
    // stored matrix satisfies B*1 == 0 in floating point
    data[i * m + i] = -off;
  }

  if (m >= 2) {
    // (B2) via reachability from every node over edges { (i,j) : b_ij != 0 }
    for (int start = 0; start < m; ++start) {
      std::vector<bool> seen(m, false);
      std::vector<int> stack{start};
      seen[start] = true;
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < m; ++j) {
          if (j != i && !seen[j] && data[i * m + j] != 0.0) {
            seen[j] = true;
            stack.push_back(j);
          }
        }
      }
      for (int j = 0; j < m; ++j)
        require(seen[j], ErrorCode::Reducible, "coupling matrix is reducible");
    }
  }
  return CouplingMatrix(std::move(data), m);
}

CouplingMatrix validate_coupling(const std::vector<double>& entries, int m) {
  return CouplingMatrix::validate(entries, m);
}

double default_v_max(const ProblemSpec& problem, const TorusGrid& grid) {
  double osc = 0.0, drift_sup = 0.0;
  for (const HamiltonianSpec& h : problem.hamiltonians) {
    require(h.kind != HamiltonianKind::Power, ErrorCode::ValidationError,
            "v_max must be given explicitly for the power catalog");
    osc = std::max(osc, h.potential.max_on(grid) - h.potential.min_on(grid));
    if (h.drift) drift_sup = std::max(drift_sup, h.drift->sup_norm_estimate(grid.nodes_per_axis()));
  }
  return 2.0 * std::sqrt(2.0 * (osc + std::fabs(problem.c)) + 4.0) + drift_sup;
}

}  // namespace hjs
