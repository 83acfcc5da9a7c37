#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpe/kernels.hpp"
#include "dpe/partition.hpp"

namespace dpe {

struct RegimeSpec {
  enum class Kind { CharlierEdge, KrawtchoukBulk };
  Kind kind = Kind::CharlierEdge;
  double s = 0.0;                  // edge
  double c = 0.0, p = 0.5;         // bulk
  std::vector<long long> n_grid;   // increasing
  std::vector<long long> window;   // sites (edge) or offsets (bulk)
};

struct ConvergenceReport {
  RegimeSpec regime;
  std::string limit_kernel;
  std::vector<std::pair<long long, double>> entries;  // (N, sup distance)
  bool passed = false;  // distance at N_max below half the distance at N_min

  std::string to_json() const {
    nlohmann::json j;
    j["regime"] = regime.kind == RegimeSpec::Kind::CharlierEdge ? "edge" : "bulk";
    if (regime.kind == RegimeSpec::Kind::CharlierEdge) {
      j["params"] = {{"s", regime.s}};
    } else {
      j["params"] = {{"c", regime.c}, {"p", regime.p}};
    }
    j["window"] = regime.window;
    j["limit_kernel"] = limit_kernel;
    auto& e = j["entries"] = nlohmann::json::array();
    for (const auto& [n, d] : entries) e.push_back({n, d});
    j["passed"] = passed;
    return j.dump();
  }
};

namespace detail {

inline double window_sup_distance(const Kernel& a, const Kernel& b,
                                  const std::vector<long long>& sites_a,
                                  const std::vector<long long>& sites_b) {
  double sup = 0.0;
  for (std::size_t i = 0; i < sites_a.size(); ++i)
    for (std::size_t j = i; j < sites_a.size(); ++j)
      sup = std::max(sup, std::fabs(a.evaluate(sites_a[i], sites_a[j]) -
                                    b.evaluate(sites_b[i], sites_b[j])));
  return sup;
}

inline void finalize_report(ConvergenceReport& rep) {
  std::sort(rep.entries.begin(), rep.entries.end());
  rep.passed = !rep.entries.empty() &&
               rep.entries.back().second < 0.5 * rep.entries.front().second;
}

}  // namespace detail

// Edge regime: theta(N) = N + s sqrt(N); sup-distance of the Charlier
// kernel to the discrete Hermite kernel on a fixed window of Z_+.
inline ConvergenceReport charlier_edge_sweep(double s,
                                             std::vector<long long> n_grid,
                                             std::vector<long long> window) {
  if (window.empty() || window.size() > 30)
    throw std::domain_error("charlier_edge_sweep: window size out of [1,30]");
  if (n_grid.empty()) throw std::domain_error("charlier_edge_sweep: empty N grid");
  for (long long n : n_grid)
    if (n > 10000)
      throw std::domain_error("charlier_edge_sweep: N exceeds 10000");
  ConvergenceReport rep;
  rep.regime.kind = RegimeSpec::Kind::CharlierEdge;
  rep.regime.s = s;
  rep.regime.n_grid = n_grid;
  rep.regime.window = window;
  rep.limit_kernel = "discrete-hermite";
  const HermiteKernel limit(s);
  for (long long N : n_grid) {
    if (N < 1) throw std::domain_error("charlier_edge_sweep: N must be >= 1");
    const double theta = N + s * std::sqrt(static_cast<double>(N));
    if (theta <= 0.0)
      throw std::domain_error("charlier_edge_sweep: theta(N) <= 0");
    const CharlierKernel finite(N, theta);
    rep.entries.emplace_back(
        N, detail::window_sup_distance(finite, limit, window, window));
  }
  detail::finalize_report(rep);
  return rep;
}

// Bulk regime: L = 2N-1, shift by N + round(cN); sup-distance of the shifted
// Krawtchouk kernel to the discrete sine kernel on a window of offsets.
inline ConvergenceReport krawtchouk_bulk_sweep(double c, double p,
                                               std::vector<long long> n_grid,
                                               std::vector<long long> offsets) {
  if (offsets.empty() || offsets.size() > 30)
    throw std::domain_error("krawtchouk_bulk_sweep: offset window out of [1,30]");
  if (n_grid.empty())
    throw std::domain_error("krawtchouk_bulk_sweep: empty N grid");
  ConvergenceReport rep;
  rep.regime.kind = RegimeSpec::Kind::KrawtchoukBulk;
  rep.regime.c = c;
  rep.regime.p = p;
  rep.regime.n_grid = n_grid;
  rep.regime.window = offsets;
  rep.limit_kernel = "discrete-sine";
  const SineKernel limit(phi_from_cp(c, p));
  for (long long N : n_grid) {
    if (N < 1) throw std::domain_error("krawtchouk_bulk_sweep: N must be >= 1");
    const long long L = 2 * N - 1;
    const long long shift = N + std::llround(c * static_cast<double>(N));
    std::vector<long long> sites(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      sites[i] = shift + offsets[i];
      if (sites[i] < 0 || sites[i] > L)
        throw std::domain_error("krawtchouk_bulk_sweep: window leaves {0..L}");
    }
    const KrawtchoukKernel finite(N, p, L);
    rep.entries.emplace_back(
        N, detail::window_sup_distance(finite, limit, sites, offsets));
  }
  detail::finalize_report(rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Limit-shape curves
// ---------------------------------------------------------------------------

// Omega(u) = (2/pi)(u arcsin(u/2) + sqrt(4 - u^2)) on [-2, 2].
inline double omega(double u) {
  if (!(std::fabs(u) <= 2.0)) throw std::domain_error("omega: |u| > 2");
  return (2.0 / detail::kPi) *
         (u * std::asin(0.5 * u) + std::sqrt(std::max(0.0, 4.0 - u * u)));
}

// Closed derivative Omega'(u) = (2/pi) arcsin(u/2).
inline double omega_derivative(double u) {
  if (!(std::fabs(u) <= 2.0)) throw std::domain_error("omega: |u| > 2");
  return (2.0 / detail::kPi) * std::asin(0.5 * u);
}

// Fraction of horizontal boundary steps, (1 + Omega'(u))/2.
inline double omega_density(double u) { return 0.5 * (1.0 + omega_derivative(u)); }

struct LimitCurve {
  enum class Kind { PlancherelOmega, MixF };
  Kind kind = Kind::PlancherelOmega;
  double p = 0.0;     // MixF
  double c_max = 2.0; // admissible half-width of the u range
  double area = 0.0;  // MixF: area between the curve and |u|, halved
  std::vector<double> u, v;
};

inline LimitCurve omega_curve(int points) {
  if (points < 2) throw std::domain_error("omega_curve: need at least 2 points");
  LimitCurve curve;
  curve.kind = LimitCurve::Kind::PlancherelOmega;
  curve.c_max = 2.0;
  curve.u.resize(static_cast<std::size_t>(points));
  curve.v.resize(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double u = -2.0 + 4.0 * k / (points - 1);
    curve.u[static_cast<std::size_t>(k)] = u;
    curve.v[static_cast<std::size_t>(k)] = omega(u);
  }
  return curve;
}

namespace detail {

// F'(c) = 1 - (2/pi) arccos( c(1-2p) / (2 sqrt((1-c^2) p(1-p))) ), with the
// arccos argument clamped so the closed endpoints evaluate cleanly.
inline double mix_f_derivative(double c, double p, double c_max) {
  if (std::fabs(c) >= c_max)
    c = std::copysign(c_max, c);
  const double num = c * (1.0 - 2.0 * p);
  const double denom = 2.0 * std::sqrt((1.0 - c * c) * p * (1.0 - p));
  double t = 0.0;
  if (denom > 0.0)
    t = std::clamp(num / denom, -1.0, 1.0);
  else if (num != 0.0)
    t = std::copysign(1.0, num);
  return 1.0 - (2.0 / kPi) * std::acos(t);
}

// Open midpoint rule with dyadic refinement; tolerant of the square-root
// singularity of the integrand's derivative at the panel ends.
template <typename F>
double midpoint_refine(const F& f, double a, double b, double tol) {
  double prev = 0.0;
  for (long long n = 8;; n *= 2) {
    const double h = (b - a) / static_cast<double>(n);
    double s = 0.0;
    for (long long i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    s *= h;
    if (n >= 64 && std::fabs(s - prev) < tol) return s;
    if (n > (1 << 22))
      throw numeric_error("midpoint_refine: panel tolerance not reached");
    prev = s;
  }
}

}  // namespace detail

// Limit curve of the mixture model: integrates F' from -c_max and
// checks the return to the anchor at +c_max (F' is odd).  For p <= 1/2 the
// endpoints of the curve lie on the axes, so F(-c_max) = c_max; for
// p > 1/2 the density saturates outside [-c_max, c_max] and the curve
// continues along the box walls v = 2 - |u|, so the segment is anchored at
// F(-c_max) = 2 - c_max and the reported area includes the two wall strips
// of total size (1 - c_max)^2.
inline LimitCurve limit_shape_F(double p, int points) {
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("limit_shape_F: p not in (0,1)");
  if (points < 100)
    throw std::domain_error("limit_shape_F: need at least 100 grid points");
  const double c_max = 2.0 * std::sqrt(p * (1.0 - p));
  const double anchor = p <= 0.5 ? c_max : 2.0 - c_max;
  LimitCurve curve;
  curve.kind = LimitCurve::Kind::MixF;
  curve.p = p;
  curve.c_max = c_max;
  curve.u.resize(static_cast<std::size_t>(points));
  curve.v.resize(static_cast<std::size_t>(points));

  auto fp = [&](double c) { return detail::mix_f_derivative(c, p, c_max); };

  double v = anchor;
  curve.u[0] = -c_max;
  curve.v[0] = v;
  for (int k = 1; k < points; ++k) {
    const double a = -c_max + 2.0 * c_max * (k - 1) / (points - 1);
    const double b = -c_max + 2.0 * c_max * k / (points - 1);
    const bool endpoint_panel = (k == 1) || (k == points - 1);
    v += endpoint_panel ? detail::midpoint_refine(fp, a, b, 1e-8)
                        : detail::adaptive_simpson(fp, a, b, 1e-10);
    curve.u[static_cast<std::size_t>(k)] = b;
    curve.v[static_cast<std::size_t>(k)] = v;
  }
  if (std::fabs(curve.v.back() - anchor) > 1e-6)
    throw numeric_error("limit_shape_F: curve does not return to the anchor");

  // central strip: (1/2) int (F - |u|) du
  //              = c_max * anchor - (1/2) c_max^2 - (1/2) int u F'(u) du
  auto ufp = [&](double c) { return c * fp(c); };
  const double inner = detail::adaptive_simpson(ufp, -c_max + 1e-3 * c_max,
                                                c_max - 1e-3 * c_max, 1e-9);
  const double left = detail::midpoint_refine(ufp, -c_max, -c_max + 1e-3 * c_max, 1e-10);
  const double right = detail::midpoint_refine(ufp, c_max - 1e-3 * c_max, c_max, 1e-10);
  curve.area = c_max * anchor - 0.5 * c_max * c_max -
               0.5 * (left + inner + right);
  if (p > 0.5) curve.area += (1.0 - c_max) * (1.0 - c_max);
  return curve;
}

// ---------------------------------------------------------------------------
// Sampled diagram profiles
// ---------------------------------------------------------------------------

// Piecewise-linear scaled boundary v(u); outside the stored breakpoints the
// profile continues as |u|.
struct DiagramProfile {
  std::vector<double> u, v;  // increasing in u

  double eval(double x) const {
    if (u.empty() || x <= u.front() || x >= u.back()) return std::fabs(x);
    const auto it = std::upper_bound(u.begin(), u.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - u.begin());
    const double t = (x - u[j - 1]) / (u[j] - u[j - 1]);
    return v[j - 1] + t * (v[j] - v[j - 1]);
  }
};

// Scaled boundary of the diagram encoded by an N-point configuration, in the
// coordinates u = (j - i)/N, v = (j + i)/N.
inline DiagramProfile profile_from_sample(const ParticleConfiguration& config,
                                          long long N) {
  if (N < 1) throw std::domain_error("profile_from_sample: N must be >= 1");
  const Partition lambda = from_config(config);
  const long long k_hi = lambda.part(1) + 1;
  const long long k_lo = -(lambda.length() + 1);
  const std::vector<long long> particles =
      frontier(lambda, 2 * k_lo + 1, 2 * k_hi - 1);

  const long long count = k_hi - k_lo + 1;
  DiagramProfile prof;
  prof.u.resize(static_cast<std::size_t>(count));
  prof.v.resize(static_cast<std::size_t>(count));
  std::vector<long long> w(static_cast<std::size_t>(count));
  w[static_cast<std::size_t>(count - 1)] = k_hi;
  for (long long k = k_hi; k > k_lo; --k) {
    // segment centered at the node k - 1/2 (doubled: 2k - 1)
    const bool occupied =
        std::binary_search(particles.rbegin(), particles.rend(), 2 * k - 1);
    const long long wk = w[static_cast<std::size_t>(k - k_lo)];
    w[static_cast<std::size_t>(k - 1 - k_lo)] = occupied ? wk + 1 : wk - 1;
  }
  for (long long k = k_lo; k <= k_hi; ++k) {
    prof.u[static_cast<std::size_t>(k - k_lo)] =
        static_cast<double>(k) / static_cast<double>(N);
    prof.v[static_cast<std::size_t>(k - k_lo)] =
        static_cast<double>(w[static_cast<std::size_t>(k - k_lo)]) /
        static_cast<double>(N);
  }
  return prof;
}

}  // namespace dpe
