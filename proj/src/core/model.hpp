#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "core/expr.hpp"

namespace hjs {

// Points and velocities on the flat torus [0,1)^d, d in {1,2}. Axes beyond
// the active dimension are held at zero.
using Point = std::array<double, 2>;
using Velocity = std::array<double, 2>;

inline double wrap01(double x) {
  double r = x - std::floor(x);
  return r < 1.0 ? r : 0.0;
}

inline double dot(const Velocity& a, const Velocity& b, int dim) {
  double s = 0.0;
  for (int ax = 0; ax < dim; ++ax) s += a[ax] * b[ax];
  return s;
}

inline double norm(const Velocity& v, int dim) { return std::sqrt(dot(v, v, dim)); }

// Uniform periodic grid with n nodes per axis and spacing 1/n.
class TorusGrid {
 public:
  TorusGrid(int dim, int nodes_per_axis);

  int dim() const { return dim_; }
  int nodes_per_axis() const { return n_; }
  int node_count() const { return count_; }
  double spacing() const { return dx_; }

  Point node(int flat) const;
  int flat_index(int i0, int i1 = 0) const;

  // Wraparound Euclidean distance.
  double distance(const Point& a, const Point& b) const;

  // Flat index of the node closest to x (ties toward the lower node).
  int nearest_node(const Point& x) const;

  // Periodic multilinear interpolation stencil at an arbitrary point:
  // per-axis base index in [0,n) and fraction in [0,1). The 2^d weights are
  // products of (1-t, t) factors; they are nonnegative and sum to 1.
  struct Stencil {
    std::array<int, 2> base{0, 0};
    std::array<double, 2> frac{0.0, 0.0};
  };
  Stencil stencil_at(const Point& x) const;

  // Interpolate values (one double per node, flat-indexed) at x.
  double interpolate(const double* values, const Point& x) const;
  double interpolate(const double* values, const Stencil& s) const;

 private:
  int dim_;
  int n_;
  int count_;
  double dx_;
};

// Finite symmetric control set containing 0, with |v| <= v_max.
class ControlGrid {
 public:
  ControlGrid(int dim, std::vector<Velocity> controls, double v_max);

  // Uniform symmetric set: per_axis values per axis (odd so 0 is included),
  // tensorized in 2-D and clipped to the Euclidean ball of radius v_max.
  static ControlGrid symmetric(int dim, int per_axis, double v_max);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(controls_.size()); }
  const Velocity& control(int a) const { return controls_[a]; }
  const std::vector<Velocity>& controls() const { return controls_; }
  double v_max() const { return v_max_; }
  int zero_index() const { return zero_index_; }

 private:
  int dim_;
  std::vector<Velocity> controls_;
  double v_max_;
  int zero_index_;
};

// Scalar field on the torus: a closed-form expression or periodic grid samples.
class ScalarField {
 public:
  static ScalarField expression(const std::string& text, int dim);
  static ScalarField constant(double value);
  static ScalarField samples(TorusGrid grid, std::vector<double> values);

  double operator()(const Point& x) const;
  int dim() const { return dim_; }
  const std::string& source() const { return source_; }

  // Finite-difference Lipschitz estimate on a probe grid (wraparound included).
  double lipschitz_estimate(int probe_n = 256) const;
  // Max |f(edge) - f(edge + 1 axis period)| over probe points; 0 for samples.
  double periodicity_defect(int probe_n = 256) const;

  double min_on(const TorusGrid& grid) const;
  double max_on(const TorusGrid& grid) const;

 private:
  ScalarField() = default;
  int dim_ = 1;
  std::optional<ParsedExpression> expr_;
  std::optional<TorusGrid> sample_grid_;
  std::vector<double> sample_values_;
  std::string source_;
};

class VectorField {
 public:
  VectorField(std::vector<ScalarField> components, int dim);
  Velocity operator()(const Point& x) const;
  int dim() const { return dim_; }
  double sup_norm_estimate(int probe_n = 256) const;
  const ScalarField& component(int ax) const { return comps_[ax]; }

 private:
  std::vector<ScalarField> comps_;
  int dim_;
};

enum class HamiltonianKind { Quadratic, QuadraticDrift, Power };

const char* hamiltonian_kind_name(HamiltonianKind k);
HamiltonianKind hamiltonian_kind_from_name(const std::string& name);

// One catalog Hamiltonian H_i(x,p); every member is convex and superlinear in
// p by construction, with a closed-form convex conjugate.
//   quadratic:        H = |p|^2/2 - f(x)            L = |v|^2/2 + f(x)
//   quadratic-drift:  H = |p|^2/2 + <b(x),p> - f(x)  L = |v - b(x)|^2/2 + f(x)
//   power:            H = |p|^q/q - f(x)            L = |v|^q'/q' + f(x)
struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::Quadratic;
  ScalarField potential = ScalarField::constant(0.0);
  std::optional<VectorField> drift;
  double exponent = 2.0;  // q > 1, power kind only
  int mode = 0;

  double eval(const Point& x, const Velocity& p, int dim) const;        // H_i(x,p)
  double lagrangian(const Point& x, const Velocity& v, int dim) const;  // L_i(x,v), closed form
};

// eval_hamiltonian / legendre_transform per the catalog contracts.
double eval_hamiltonian(const HamiltonianSpec& h, const Point& x, const Velocity& p, int dim);
double legendre_transform(const HamiltonianSpec& h, const Point& x, const Velocity& v, int dim);

// Generic numeric conjugate sup_p { <p,v> - H(x,p) } by golden-section /
// coordinate ascent over a p-box whose radius starts at 2(1+|v|) and doubles
// until the maximizer is interior. Cross-check oracle for the closed forms.
double legendre_numeric(const HamiltonianSpec& h, const Point& x, const Velocity& v, int dim,
                        double tol = 1e-10, int max_doublings = 40);

// m x m coupling matrix: nonpositive off-diagonal entries, zero row sums,
// irreducible. The diagonal is canonicalized to the exact negated sum of the
// off-diagonal entries so that B*1 == 0 holds exactly.
class CouplingMatrix {
 public:
  static CouplingMatrix validate(const std::vector<double>& entries, int m);

  int size() const { return m_; }
  double entry(int i, int j) const { return data_[i * m_ + j]; }
  const std::vector<double>& data() const { return data_; }
  double rate(int i) const { return data_[i * m_ + i]; }  // > 0 when m >= 2

 private:
  CouplingMatrix(std::vector<double> data, int m) : data_(std::move(data)), m_(m) {}
  std::vector<double> data_;
  int m_;
};

CouplingMatrix validate_coupling(const std::vector<double>& entries, int m);

// A full weakly coupled problem: one Hamiltonian per mode, the coupling
// matrix, the torus dimension and the right-hand-side constant c.
struct ProblemSpec {
  std::vector<HamiltonianSpec> hamiltonians;
  CouplingMatrix coupling;
  int dim = 1;
  double c = 0.0;

  int modes() const { return static_cast<int>(hamiltonians.size()); }
};

// Default control radius for the quadratic catalog (+ drift sup), chosen so
// that minimizing controls stay strictly interior; validated post hoc by the
// feedback synthesis.
double default_v_max(const ProblemSpec& problem, const TorusGrid& grid);

}  // namespace hjs
