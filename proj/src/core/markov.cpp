#include "core/markov.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace hjs {

namespace {

// C = A * B for m x m row-major matrices.
std::vector<double> matmul(const std::vector<double>& A, const std::vector<double>& B, int m) {
  std::vector<double> C(m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      double a = A[i * m + k];
      if (a == 0.0) continue;
      for (int j = 0; j < m; ++j) C[i * m + j] += a * B[k * m + j];
    }
  return C;
}

double inf_norm(const std::vector<double>& A, int m) {
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += std::fabs(A[i * m + j]);
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace

StochasticMatrix transition_matrix(const CouplingMatrix& B, double t) {
  require(t >= 0.0 && std::isfinite(t), ErrorCode::ValidationError, "time must be >= 0");
  const int m = B.size();
  StochasticMatrix out;
  out.m = m;
  out.t = t;
  out.p.assign(m * m, 0.0);
  if (t == 0.0) {
    for (int i = 0; i < m; ++i) out.p[i * m + i] = 1.0;
    return out;
  }

  // A = -tB, scaled by 2^-s so ||A/2^s||_inf <= 0.5
  std::vector<double> A(m * m);
  for (int k = 0; k < m * m; ++k) A[k] = -t * B.data()[k];
  int s = 0;
  double nrm = inf_norm(A, m);
  while (nrm > 0.5) {
    nrm *= 0.5;
    ++s;
  }
  double scale = std::ldexp(1.0, -s);
  for (double& a : A) a *= scale;

  // Taylor series until the term norm drops below 1e-14
  std::vector<double> acc(m * m, 0.0), term(m * m, 0.0);
  for (int i = 0; i < m; ++i) acc[i * m + i] = term[i * m + i] = 1.0;
  for (int k = 1; k <= 64; ++k) {
    term = matmul(term, A, m);
    for (double& v : term) v /= k;
    for (int j = 0; j < m * m; ++j) acc[j] += term[j];
    if (inf_norm(term, m) < 1e-14) break;
  }
  for (int k = 0; k < s; ++k) acc = matmul(acc, acc, m);

  for (int i = 0; i < m; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < m; ++j) {
      double v = acc[i * m + j];
      require(v >= -1e-14, ErrorCode::Internal, "transition matrix entry below -1e-14");
      acc[i * m + j] = std::max(v, 0.0);
      rowsum += acc[i * m + j];
    }
    require(std::fabs(rowsum - 1.0) <= 1e-12, ErrorCode::Internal,
            "transition matrix row does not sum to 1");
  }
  out.p = std::move(acc);
  return out;
}

SwitchingPath sample_path(const CouplingMatrix& B, int initial_mode, double horizon,
                          SplitMix64& rng) {
  require(horizon > 0.0, ErrorCode::ValidationError, "horizon must be positive");
  const int m = B.size();
  require(initial_mode >= 0 && initial_mode < m, ErrorCode::ValidationError,
          "initial mode out of range");
  SwitchingPath path;
  path.initial_mode = initial_mode;
  path.horizon = horizon;
  if (m == 1) return path;

  double t = 0.0;
  int mode = initial_mode;
  std::vector<double> weights(m);
  for (;;) {
    double rate = B.rate(mode);
    t += rng.next_exponential(rate);
    if (t > horizon) break;
    for (int j = 0; j < m; ++j) weights[j] = j == mode ? 0.0 : -B.entry(mode, j);
    int next = rng.next_index(weights);
    path.jumps.emplace_back(t, next);
    mode = next;
  }
  return path;
}

std::vector<double> empirical_marginal(const std::vector<SwitchingPath>& paths, double t) {
  require(!paths.empty(), ErrorCode::ValidationError, "no paths given");
  int m = 1;
  for (const SwitchingPath& p : paths) {
    require(p.horizon >= t, ErrorCode::HorizonTooShort, "path horizon shorter than query time");
    m = std::max(m, p.initial_mode + 1);
    for (const auto& [tau, j] : p.jumps) m = std::max(m, j + 1);
  }
  std::vector<double> freq(m, 0.0);
  for (const SwitchingPath& p : paths) freq[p.mode_at(t)] += 1.0;
  for (double& f : freq) f /= static_cast<double>(paths.size());
  return freq;
}

DynkinResult dynkin_residual(const GridVectorFunction& g, const AdmissibleCurve& curve,
                             const CouplingMatrix& B, const std::vector<SwitchingPath>& paths,
                             double t0, double t1, double quad_dt) {
  require(t1 > t0, ErrorCode::ValidationError, "need t1 > t0");
  require(!paths.empty(), ErrorCode::ValidationError, "no paths given");
  const int m = B.size();
  require(g.modes() == m, ErrorCode::DimensionMismatch, "g modes do not match coupling size");

  auto Bg = [&](int i, const Point& x) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += B.entry(i, j) * g.eval(j, x);
    return s;
  };

  double sum = 0.0, sumsq = 0.0;
  for (const SwitchingPath& path : paths) {
    require(path.horizon >= t1, ErrorCode::HorizonTooShort, "path horizon shorter than t1");
    double r = 0.0;
    // segment boundaries: t0, jumps in (t0,t1], t1
    double seg_start = t0;
    int mode = path.mode_at(t0);
    std::size_t jidx = 0;
    while (jidx < path.jumps.size() && path.jumps[jidx].first <= t0) ++jidx;
    for (;;) {
      double seg_end = t1;
      int next_mode = mode;
      bool jump = false;
      if (jidx < path.jumps.size() && path.jumps[jidx].first < t1) {
        seg_end = path.jumps[jidx].first;
        next_mode = path.jumps[jidx].second;
        jump = true;
        ++jidx;
      }
      // integral of (B g)_mode along the curve over [seg_start, seg_end]
      double len = seg_end - seg_start;
      if (len > 0.0) {
        int panels = std::max(1, static_cast<int>(std::ceil(len / quad_dt)));
        double hq = len / panels;
        double acc = 0.0;
        for (int k = 0; k < panels; ++k) {
          double a = seg_start + k * hq;
          double mid = a + 0.5 * hq;
          double b = a + hq;
          acc += (hq / 6.0) * (Bg(mode, curve.position(path, a)) +
                               4.0 * Bg(mode, curve.position(path, mid)) +
                               Bg(mode, curve.position(path, b)));
        }
        r += acc;
      }
      if (!jump) break;
      // g jumps with the mode while the curve stays continuous
      Point xj = curve.position(path, seg_end);
      r += g.eval(next_mode, xj) - g.eval(mode, xj);
      mode = next_mode;
      seg_start = seg_end;
    }
    sum += r;
    sumsq += r * r;
  }

  const double n = static_cast<double>(paths.size());
  DynkinResult res;
  res.paths = static_cast<int>(paths.size());
  res.quad_step = quad_dt;
  double mean = sum / n;
  res.residual = std::fabs(mean);
  double var = std::max(0.0, sumsq / n - mean * mean);
  res.std_error = std::sqrt(var / n);
  return res;
}

}  // namespace hjs
