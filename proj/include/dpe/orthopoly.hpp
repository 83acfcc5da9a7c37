#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dpe/numeric.hpp"

namespace dpe {

// ---------------------------------------------------------------------------
// Raw polynomial values (plain binary64 recurrences)
// ---------------------------------------------------------------------------

// Physicists' Hermite polynomial H_n(t): H_{n+1} = 2t H_n - 2n H_{n-1}.
inline double hermite(int n, double t) {
  if (n < 0 || n > 400)
    throw std::domain_error("hermite: degree out of [0,400]");
  double hm = 0.0, h = 1.0;
  for (int k = 0; k < n; ++k) {
    const double hp = 2.0 * t * h - 2.0 * k * hm;
    hm = h;
    h = hp;
  }
  return h;
}

// Charlier polynomial C_m(x; theta) via the degree recurrence
// theta C_{m+1} = (m + theta - x) C_m - m C_{m-1}, C_0 = 1.
// Self-dual (C_m(x) = C_x(m)); recursing in the smaller index keeps the
// wanted solution dominant, the deep-degree direction is unstable.
inline double charlier(int m, long long x, double theta) {
  if (theta <= 0.0) throw std::domain_error("charlier: theta must be positive");
  if (m < 0 || x < 0) throw std::domain_error("charlier: negative argument");
  long long degree = m, site = x;
  if (degree > site) std::swap(degree, site);
  double cm = 0.0, c = 1.0;
  for (long long k = 0; k < degree; ++k) {
    const double cp =
        ((k + theta - static_cast<double>(site)) * c - k * cm) / theta;
    cm = c;
    c = cp;
  }
  return c;
}

// Krawtchouk polynomial K_m(x; p, L) via the degree recurrence
// p(L-m) K_{m+1} = (p(L-m) + m(1-p) - x) K_m - m(1-p) K_{m-1}, K_0 = 1.
// Self-dual like Charlier; evaluated in the smaller index.
inline double krawtchouk(int m, long long x, double p, long long L) {
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("krawtchouk: p not in (0,1)");
  if (L < 1) throw std::domain_error("krawtchouk: L must be positive");
  if (m < 0 || m > L) throw std::domain_error("krawtchouk: degree out of [0,L]");
  if (x < 0 || x > L) throw std::domain_error("krawtchouk: x out of [0,L]");
  long long degree = m, site = x;
  if (degree > site) std::swap(degree, site);
  double km = 0.0, k = 1.0;
  for (long long j = 0; j < degree; ++j) {
    const double a = p * (L - j);
    const double kp = ((a + j * (1.0 - p) - static_cast<double>(site)) * k -
                       j * (1.0 - p) * km) /
                      a;
    km = k;
    k = kp;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Weights and normalized lattice functions
// ---------------------------------------------------------------------------

// ln W^ch_theta(x) = x ln theta - ln x!
inline double charlier_log_weight(long long x, double theta) {
  if (theta <= 0.0) throw std::domain_error("charlier weight: theta <= 0");
  if (x < 0) throw std::domain_error("charlier weight: x < 0");
  return static_cast<double>(x) * std::log(theta) -
         std::lgamma(static_cast<double>(x) + 1.0);
}

// ln W^kr_{p,L}(x) = ln C(L,x) + x ln p + (L-x) ln(1-p)
inline double krawtchouk_log_weight(long long x, double p, long long L) {
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("krawtchouk weight: bad p");
  if (x < 0 || x > L) throw std::domain_error("krawtchouk weight: x out of range");
  const double dL = static_cast<double>(L), dx = static_cast<double>(x);
  return std::lgamma(dL + 1.0) - std::lgamma(dx + 1.0) -
         std::lgamma(dL - dx + 1.0) + dx * std::log(p) +
         (dL - dx) * std::log1p(-p);
}

// Lattice truncation for the Charlier weight: Poisson(theta) tail mass
// beyond the cutoff is below 1e-14.
inline long long charlier_truncation(double theta) {
  const long long x =
      static_cast<long long>(std::ceil(theta + 12.0 * std::sqrt(theta) + 50.0));
  return std::max<long long>(80, x);
}

namespace detail {

// Runs the orthonormal-function degree recurrence
//   f_{m+1} = A(m) f_m - B(m) f_{m-1},   f_0 = exp(log_start), f_{-1} = 0,
// carrying a shared log-scale so that a deeply subnormal start (log_start
// as low as -10^5) still produces correct values once the recurrence grows
// back into range.  Out-of-range values are flushed to zero.
template <typename CoefA, typename CoefB>
std::vector<double> scaled_degree_scan(double log_start, int mmax, CoefA A,
                                       CoefB B) {
  std::vector<double> out(static_cast<std::size_t>(mmax) + 1, 0.0);
  double sigma = log_start;
  double prev = 0.0, cur = 1.0;
  const double step = std::log(1e150);
  auto emit = [&](int m) {
    if (cur == 0.0) return;
    const double l = sigma + std::log(std::fabs(cur));
    if (l > -745.0)
      out[static_cast<std::size_t>(m)] = (cur > 0.0 ? 1.0 : -1.0) * std::exp(l);
  };
  emit(0);
  for (int m = 0; m < mmax; ++m) {
    const double next = A(m) * cur - B(m) * prev;
    prev = cur;
    cur = next;
    const double mag = std::max(std::fabs(cur), std::fabs(prev));
    if (mag > 1e150) {
      cur *= 1e-150;
      prev *= 1e-150;
      sigma += step;
    } else if (mag > 0.0 && mag < 1e-150) {
      cur *= 1e150;
      prev *= 1e150;
      sigma -= step;
    }
    emit(m + 1);
  }
  return out;
}

}  // namespace detail

// Values of the orthonormal Charlier functions at one site:
// returns { C~_m(x; theta) : m = 0..mmax }.
inline std::vector<double> charlier_normalized_row(long long x, double theta,
                                                   int mmax) {
  if (mmax < 0) throw std::domain_error("charlier_normalized_row: mmax < 0");
  const double log_start = 0.5 * (charlier_log_weight(x, theta) - theta);
  const double sq_theta = std::sqrt(theta);
  return detail::scaled_degree_scan(
      log_start, mmax,
      [&](int m) {
        return (m + theta - static_cast<double>(x)) /
               (sq_theta * std::sqrt(m + 1.0));
      },
      [&](int m) { return std::sqrt(static_cast<double>(m) / (m + 1.0)); });
}

// Values of the orthonormal Krawtchouk functions at one site:
// returns { K~_m(x; p, L) : m = 0..mmax }, mmax <= L.
inline std::vector<double> krawtchouk_normalized_row(long long x, double p,
                                                     long long L, int mmax) {
  if (mmax < 0 || mmax > L)
    throw std::domain_error("krawtchouk_normalized_row: mmax out of [0,L]");
  const double log_start = 0.5 * krawtchouk_log_weight(x, p, L);
  const double spq = std::sqrt(p * (1.0 - p));
  return detail::scaled_degree_scan(
      log_start, mmax,
      [&](int m) {
        const double lm = static_cast<double>(L - m);
        return (p * lm + m * (1.0 - p) - static_cast<double>(x)) /
               (spq * std::sqrt(lm * (m + 1.0)));
      },
      [&](int m) {
        if (m == 0) return 0.0;
        return std::sqrt(static_cast<double>(m) * (L - m + 1.0) /
                         ((m + 1.0) * (L - m)));
      });
}

inline double charlier_normalized(int m, long long x, double theta) {
  return charlier_normalized_row(x, theta, m)[static_cast<std::size_t>(m)];
}

inline double krawtchouk_normalized(int m, long long x, double p, long long L) {
  return krawtchouk_normalized_row(x, p, L, m)[static_cast<std::size_t>(m)];
}

// ---------------------------------------------------------------------------
// Jacobi (symmetric tridiagonal) operators
// ---------------------------------------------------------------------------

struct JacobiOperator {
  enum class Family { Hermite, Charlier, KrawtchoukDiff, FreeShift };

  Family family = Family::FreeShift;
  double theta = 0.0;  // Charlier
  double p = 0.0;      // KrawtchoukDiff
  long long L = 0;     // KrawtchoukDiff
  long long origin = 0;  // ground-set offset (FreeShift windows)

  std::vector<double> diagonal;     // b_0 .. b_{K-1}
  std::vector<double> offdiagonal;  // a_0 .. a_{K-2}

  long long cutoff() const { return static_cast<long long>(diagonal.size()); }
};

// Upper-left K x K corner of the Hermite Jacobi matrix: b = 0, a_x = sqrt(x+1).
inline JacobiOperator jacobi_hermite(long long K) {
  if (K < 2) throw std::domain_error("jacobi_hermite: cutoff must be >= 2");
  JacobiOperator J;
  J.family = JacobiOperator::Family::Hermite;
  J.diagonal.assign(static_cast<std::size_t>(K), 0.0);
  J.offdiagonal.resize(static_cast<std::size_t>(K - 1));
  for (long long x = 0; x + 1 < K; ++x)
    J.offdiagonal[static_cast<std::size_t>(x)] = std::sqrt(x + 1.0);
  return J;
}

// Upper-left corner of the Charlier difference operator:
// b_x = -x/sqrt(theta), a_x = sqrt(x+1).
inline JacobiOperator jacobi_charlier(double theta, long long K) {
  if (theta <= 0.0) throw std::domain_error("jacobi_charlier: theta <= 0");
  if (K < 2) throw std::domain_error("jacobi_charlier: cutoff must be >= 2");
  JacobiOperator J;
  J.family = JacobiOperator::Family::Charlier;
  J.theta = theta;
  J.diagonal.resize(static_cast<std::size_t>(K));
  J.offdiagonal.resize(static_cast<std::size_t>(K - 1));
  const double sq_theta = std::sqrt(theta);
  for (long long x = 0; x < K; ++x)
    J.diagonal[static_cast<std::size_t>(x)] = -static_cast<double>(x) / sq_theta;
  for (long long x = 0; x + 1 < K; ++x)
    J.offdiagonal[static_cast<std::size_t>(x)] = std::sqrt(x + 1.0);
  return J;
}

// Normalized Krawtchouk difference operator on {0..L} (K = L+1 is forced):
// b_x = x(2p-1)/(L sqrt(p(1-p))), a_x = sqrt((L-x)(x+1))/L.
inline JacobiOperator jacobi_krawtchouk_diff(double p, long long L) {
  if (p <= 0.0 || p >= 1.0)
    throw std::domain_error("jacobi_krawtchouk_diff: p not in (0,1)");
  if (L < 1) throw std::domain_error("jacobi_krawtchouk_diff: L must be >= 1");
  JacobiOperator J;
  J.family = JacobiOperator::Family::KrawtchoukDiff;
  J.p = p;
  J.L = L;
  const double dL = static_cast<double>(L);
  const double spq = std::sqrt(p * (1.0 - p));
  J.diagonal.resize(static_cast<std::size_t>(L + 1));
  J.offdiagonal.resize(static_cast<std::size_t>(L));
  for (long long x = 0; x <= L; ++x)
    J.diagonal[static_cast<std::size_t>(x)] =
        static_cast<double>(x) * (2.0 * p - 1.0) / (dL * spq);
  for (long long x = 0; x < L; ++x)
    J.offdiagonal[static_cast<std::size_t>(x)] =
        std::sqrt(static_cast<double>(L - x) * (x + 1.0)) / dL;
  return J;
}

// Free shift f(x) -> f(x+1) + f(x-1) on a K-site window starting at origin.
inline JacobiOperator jacobi_free_shift(long long K, long long origin = 0) {
  if (K < 2) throw std::domain_error("jacobi_free_shift: cutoff must be >= 2");
  JacobiOperator J;
  J.family = JacobiOperator::Family::FreeShift;
  J.origin = origin;
  J.diagonal.assign(static_cast<std::size_t>(K), 0.0);
  J.offdiagonal.assign(static_cast<std::size_t>(K - 1), 1.0);
  return J;
}

// The exact point spectrum of the finite Krawtchouk difference operator,
// (pL - m)/(L sqrt(p(1-p))) for m = 0..L.
inline double krawtchouk_diff_eigenvalue(int m, double p, long long L) {
  return (p * static_cast<double>(L) - m) /
         (static_cast<double>(L) * std::sqrt(p * (1.0 - p)));
}

struct Eigensystem {
  Eigen::VectorXd values;   // sorted decreasing
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

// Dense symmetric-tridiagonal eigendecomposition (Eigen's self-adjoint
// solver on the tridiagonal form), eigenvalues returned in decreasing order.
inline Eigensystem eigensystem(const JacobiOperator& J) {
  const long long K = J.cutoff();
  if (K < 1) throw std::domain_error("eigensystem: empty operator");
  if (K > 20000) throw std::domain_error("eigensystem: cutoff exceeds 20000");
  Eigen::VectorXd diag(K), subdiag(K > 1 ? K - 1 : 0);
  for (long long i = 0; i < K; ++i) diag(i) = J.diagonal[static_cast<std::size_t>(i)];
  for (long long i = 0; i + 1 < K; ++i)
    subdiag(i) = J.offdiagonal[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag,
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw numeric_error("eigensystem: tridiagonal QL failed to converge at cutoff " +
                        std::to_string(K));
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace dpe
