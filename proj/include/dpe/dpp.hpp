#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpe/exact.hpp"
#include "dpe/kernels.hpp"
#include "dpe/numeric.hpp"
#include "dpe/partition.hpp"

namespace dpe {

// rho_k(x_1..x_k) = det [K(x_i, x_j)]
inline double correlation(const Kernel& K, const std::vector<long long>& points) {
  const long long k = static_cast<long long>(points.size());
  if (k == 0) return 1.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("correlation: duplicate points");
  Eigen::MatrixXd G(k, k);
  for (long long i = 0; i < k; ++i)
    for (long long j = 0; j <= i; ++j) {
      const double v = K.evaluate(points[static_cast<std::size_t>(i)],
                                  points[static_cast<std::size_t>(j)]);
      G(i, j) = v;
      G(j, i) = v;
    }
  if (k == 1) return G(0, 0);
  if (k == 2) return G(0, 0) * G(1, 1) - G(0, 1) * G(1, 0);
  return Eigen::FullPivLU<Eigen::MatrixXd>(G).determinant();
}

// Push-forward of the point process to a finite window A: probabilities of
// every subset S of A, P(X cap A = S), by inclusion-exclusion over the
// correlation functions.
struct WindowDistribution {
  std::vector<long long> window;       // sorted increasing
  std::vector<double> probabilities;   // indexed by bitmask over window

  double probability(std::vector<long long> subset) const {
    unsigned mask = 0;
    for (long long s : subset) {
      const auto it = std::lower_bound(window.begin(), window.end(), s);
      if (it == window.end() || *it != s)
        throw std::invalid_argument("WindowDistribution: point not in window");
      mask |= 1u << (it - window.begin());
    }
    return probabilities[mask];
  }

  double mean_count() const {
    double m = 0.0;
    for (std::size_t mask = 0; mask < probabilities.size(); ++mask)
      m += probabilities[mask] *
           static_cast<double>(std::popcount(static_cast<unsigned>(mask)));
    return m;
  }
};

inline WindowDistribution window_distribution(const Kernel& K,
                                              std::vector<long long> window) {
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  const std::size_t n = window.size();
  if (n > 20) throw std::domain_error("window_distribution: window exceeds 20 sites");
  const std::size_t total = std::size_t{1} << n;

  // g[mask] = (-1)^{|mask|} rho(mask); superset zeta transform turns this
  // into (-1)^{|S|} P(S).
  std::vector<double> g(total);
  std::vector<long long> pts;
  for (std::size_t mask = 0; mask < total; ++mask) {
    pts.clear();
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (std::size_t{1} << b)) pts.push_back(window[b]);
    const int parity = std::popcount(mask) % 2 == 0 ? 1 : -1;
    g[mask] = parity * correlation(K, pts);
  }
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t mask = 0; mask < total; ++mask)
      if (!(mask & (std::size_t{1} << b))) g[mask] += g[mask | (std::size_t{1} << b)];

  WindowDistribution out;
  out.window = std::move(window);
  out.probabilities.resize(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    double p = (std::popcount(mask) % 2 == 0 ? 1.0 : -1.0) * g[mask];
    if (p < -1e-12)
      throw numeric_error("window_distribution: probability below -1e-12");
    out.probabilities[mask] = std::max(p, 0.0);
  }
  return out;
}

// Draws one configuration of the projection-kernel process by sequential
// conditional sampling: pick a site from the marginal density, project the
// basis onto the complement of that site's coordinate (pivoted), drop one
// column, re-orthonormalize, repeat.
inline ParticleConfiguration sample(const Kernel& K, std::mt19937_64& rng) {
  const auto basis = K.projection_basis();
  if (!basis || !K.rank())
    throw std::domain_error("sample: kernel is not a finite-rank projection");
  Eigen::MatrixXd V = *basis;
  const long long lo = K.ground().lo;
  std::vector<long long> chosen;
  for (long long k = V.cols(); k > 0; --k) {
    const Eigen::VectorXd density = V.rowwise().squaredNorm();
    const double mass = density.sum();
    if (mass < 1e-12)
      throw numeric_error("sample: conditional density mass below 1e-12");
    double u = detail::uniform01(rng) * mass;
    long long site = V.rows() - 1;
    for (long long x = 0; x < V.rows(); ++x) {
      u -= density(x);
      if (u <= 0.0) {
        site = x;
        break;
      }
    }
    chosen.push_back(lo + site);

    long long pivot = 0;
    V.row(site).cwiseAbs().maxCoeff(&pivot);
    if (V(site, pivot) == 0.0)
      throw numeric_error("sample: degenerate pivot");
    const Eigen::VectorXd vp = V.col(pivot) / V(site, pivot);
    for (long long j = 0; j < V.cols(); ++j)
      if (j != pivot) V.col(j) -= V(site, j) * vp;
    if (pivot != V.cols() - 1) V.col(pivot).swap(V.col(V.cols() - 1));
    V.conservativeResize(Eigen::NoChange, V.cols() - 1);

    for (long long a = 0; a < V.cols(); ++a) {
      for (long long b = 0; b < a; ++b)
        V.col(a) -= V.col(b).dot(V.col(a)) * V.col(b);
      const double nrm = V.col(a).norm();
      if (nrm < 1e-12)
        throw numeric_error("sample: re-orthogonalization collapsed");
      V.col(a) /= nrm;
    }
  }
  std::sort(chosen.rbegin(), chosen.rend());
  return ParticleConfiguration(std::move(chosen));
}

// ---------------------------------------------------------------------------
// Brute-force ensemble enumeration
// ---------------------------------------------------------------------------

struct EnsembleSpec {
  enum class Family { Charlier, Krawtchouk };

  Family family = Family::Charlier;
  long long N = 1;
  double theta = 1.0;  // Charlier
  double p = 0.5;      // Krawtchouk
  long long L = 1;     // Krawtchouk

  static EnsembleSpec charlier(long long N, double theta) {
    if (N < 1 || theta <= 0.0) throw std::domain_error("EnsembleSpec: bad Charlier");
    EnsembleSpec s;
    s.family = Family::Charlier;
    s.N = N;
    s.theta = theta;
    return s;
  }
  // L defaults to 2N-1, the lattice the mixture measure lands on.
  static EnsembleSpec krawtchouk(long long N, double p, long long L = -1) {
    if (L < 0) L = 2 * N - 1;
    if (N < 1 || p <= 0.0 || p >= 1.0 || N > L + 1)
      throw std::domain_error("EnsembleSpec: bad Krawtchouk");
    EnsembleSpec s;
    s.family = Family::Krawtchouk;
    s.N = N;
    s.p = p;
    s.L = L;
    return s;
  }
};

// Exact (up to normalization roundoff) distribution of an N-point
// orthogonal polynomial ensemble over a finite ground set.
struct EnsembleDistribution {
  std::vector<std::vector<long long>> configs;  // decreasing point lists
  std::vector<double> probabilities;

  // rho_k from the table: total mass of configurations containing `points`.
  double correlation(const std::vector<long long>& points) const {
    double r = 0.0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      bool contains = true;
      for (long long pt : points) {
        if (!std::binary_search(configs[i].rbegin(), configs[i].rend(), pt)) {
          contains = false;
          break;
        }
      }
      if (contains) r += probabilities[i];
    }
    return r;
  }
};

// Enumerates all N-point subsets of {0..ground_max} with weights
// prod W(x_i) * prod (x_i - x_j)^2.  For Krawtchouk the ground set is
// {0..L} regardless of `ground_max`.
inline EnsembleDistribution enumerate_ensemble(const EnsembleSpec& spec,
                                               long long ground_max = -1) {
  const long long G = spec.family == EnsembleSpec::Family::Krawtchouk
                          ? spec.L + 1
                          : ground_max + 1;
  if (G <= 0 || spec.N > G)
    throw std::domain_error("enumerate_ensemble: bad truncation");
  if (exact::binomial(G, spec.N) > 1'000'000)
    throw std::domain_error("enumerate_ensemble: combinatorial guard tripped");

  EnsembleDistribution out;
  std::vector<double> logw;
  std::vector<long long> idx(static_cast<std::size_t>(spec.N));
  for (long long i = 0; i < spec.N; ++i) idx[static_cast<std::size_t>(i)] = i;
  auto site_logw = [&](long long x) {
    return spec.family == EnsembleSpec::Family::Charlier
               ? charlier_log_weight(x, spec.theta)
               : krawtchouk_log_weight(x, spec.p, spec.L);
  };
  while (true) {
    double lw = 0.0;
    for (long long i = 0; i < spec.N; ++i) {
      lw += site_logw(idx[static_cast<std::size_t>(i)]);
      for (long long j = i + 1; j < spec.N; ++j)
        lw += 2.0 * std::log(static_cast<double>(
                  idx[static_cast<std::size_t>(j)] - idx[static_cast<std::size_t>(i)]));
    }
    logw.push_back(lw);
    std::vector<long long> cfg(idx.rbegin(), idx.rend());
    out.configs.push_back(std::move(cfg));

    // next N-combination of {0..G-1}
    long long i = spec.N - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == G - spec.N + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (long long j = i + 1; j < spec.N; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }

  const double lmax = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  out.probabilities.resize(logw.size());
  for (std::size_t i = 0; i < logw.size(); ++i) {
    out.probabilities[i] = std::exp(logw[i] - lmax);
    total += out.probabilities[i];
  }
  for (double& p : out.probabilities) p /= total;
  return out;
}

// ---------------------------------------------------------------------------
// Exact-rational measure equivalences
// ---------------------------------------------------------------------------

struct RatioReport {
  bool constant = true;
  Rational ratio = 0;
  long long checked = 0;
};

namespace detail {

inline Rational vandermonde_squared(const ParticleConfiguration& cfg) {
  Rational v = 1;
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.points.size(); ++j) {
      const BigInt d = cfg.points[i] - cfg.points[j];
      v *= d * d;
    }
  return v;
}

}  // namespace detail

// Lambda-wise ratio of the poissonized Schur-Weyl weight (modulo the global
// e^{-nu}) to the Charlier ensemble weight with theta = nu/N, over all
// diagrams with at most N rows and |lambda| <= size_cap.
inline RatioReport charlier_ratio_check(const Rational& nu, long long N,
                                        long long size_cap = 12) {
  const MeasureSpec psw = MeasureSpec::poisson_schur_weyl(nu, N);
  const Rational theta = nu / N;
  RatioReport rep;
  bool first = true;
  for (long long n = 0; n <= size_cap; ++n) {
    for (const Partition& lambda : partitions_of(n, N)) {
      const ParticleConfiguration cfg = to_config(lambda, N);
      Rational ensemble = detail::vandermonde_squared(cfg);
      for (long long x : cfg.points)
        ensemble *= exact::pow(theta, x) / Rational(exact::factorial(x));
      const Rational ratio = measure_weight_exact(psw, lambda) / ensemble;
      if (first) {
        rep.ratio = ratio;
        first = false;
      } else if (ratio != rep.ratio) {
        rep.constant = false;
      }
      ++rep.checked;
    }
  }
  return rep;
}

// Same comparison for the binomial mixture measure against the Krawtchouk
// ensemble with L = 2N-1, over every diagram inside the N x N square.
inline RatioReport krawtchouk_ratio_check(const Rational& p, long long N) {
  const MeasureSpec mix = MeasureSpec::mix_krawtchouk(p, N);
  const long long L = 2 * N - 1;
  RatioReport rep;
  bool first = true;
  for (const Partition& lambda : partitions_in_box(N, N)) {
    const ParticleConfiguration cfg = to_config(lambda, N);
    Rational ensemble = detail::vandermonde_squared(cfg);
    for (long long x : cfg.points) {
      ensemble *= exact::binomial(L, x);
      ensemble *= exact::pow(p, x);
      ensemble *= exact::pow(Rational(1) - p, L - x);
    }
    const Rational ratio = measure_weight_exact(mix, lambda) / ensemble;
    if (first) {
      rep.ratio = ratio;
      first = false;
    } else if (ratio != rep.ratio) {
      rep.constant = false;
    }
    ++rep.checked;
  }
  return rep;
}

}  // namespace dpe
