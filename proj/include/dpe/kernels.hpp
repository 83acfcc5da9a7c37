#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpe/numeric.hpp"
#include "dpe/orthopoly.hpp"

namespace dpe {

struct GroundSet {
  enum class Kind {
    SemiInfinite,  // Z_+, hi is a truncation hint
    Finite,        // {lo..hi}
    Integers       // all of Z
  };
  Kind kind = Kind::Finite;
  long long lo = 0;
  long long hi = 0;
};

// Symmetric real correlation kernel on a discrete ground set.  Symmetry is
// exact: evaluate() canonicalizes the argument order before dispatching.
class Kernel {
 public:
  virtual ~Kernel() = default;

  double evaluate(long long x, long long y) const {
    if (x < y) std::swap(x, y);
    return eval_impl(x, y);
  }

  const GroundSet& ground() const { return ground_; }
  std::optional<long long> rank() const { return rank_; }

  // Orthonormal basis of the range for finite-rank projections; rows are
  // the ground-set sites ground().lo .. ground().lo + rows - 1.
  virtual std::optional<Eigen::MatrixXd> projection_basis() const {
    return std::nullopt;
  }

 protected:
  virtual double eval_impl(long long x, long long y) const = 0;

  GroundSet ground_;
  std::optional<long long> rank_;
};

// Sum of the diagonal over the (truncated) ground set.
inline double kernel_trace(const Kernel& K) {
  if (K.ground().kind == GroundSet::Kind::Integers)
    throw std::domain_error("kernel_trace: unbounded ground set");
  double t = 0.0;
  for (long long x = K.ground().lo; x <= K.ground().hi; ++x)
    t += K.evaluate(x, x);
  return t;
}

namespace detail {

// Shared machinery for the Charlier / Krawtchouk Christoffel-Darboux kernels
// K(x,y) = sum_{m<N} f_m(x) f_m(y) with f_m the orthonormal lattice
// functions.  Rows of f-values are produced by the scaled degree scans and
// cached; for modest ground sets the full basis can be materialized.
class OrthonormalRowCache {
 public:
  OrthonormalRowCache() = default;

  const Eigen::VectorXd& row(long long x,
                             const std::function<std::vector<double>(long long)>&
                                 make) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    const std::vector<double> vals = make(x);
    Eigen::VectorXd v(static_cast<long long>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i)
      v(static_cast<long long>(i)) = vals[i];
    return cache_.emplace(x, std::move(v)).first->second;
  }

 private:
  mutable std::mutex mutex_;
  mutable std::map<long long, Eigen::VectorXd> cache_;
};

}  // namespace detail

// Rank-N Charlier projection kernel on Z_+ (truncated at the Poisson-tail
// cutoff for whole-ground-set operations; single entries can be evaluated
// at any site).
class CharlierKernel : public Kernel {
 public:
  CharlierKernel(long long N, double theta) : N_(N), theta_(theta) {
    if (N < 1) throw std::domain_error("charlier_kernel: N must be >= 1");
    if (theta <= 0.0) throw std::domain_error("charlier_kernel: theta <= 0");
    ground_ = {GroundSet::Kind::SemiInfinite, 0, charlier_truncation(theta)};
    rank_ = N;
  }

  long long particles() const { return N_; }
  double theta() const { return theta_; }

  std::optional<Eigen::MatrixXd> projection_basis() const override {
    const long long rows = ground_.hi + 1;
    if (rows * N_ > 40'000'000)
      throw numeric_error("charlier_kernel: basis too large to materialize");
    Eigen::MatrixXd V(rows, N_);
    for (long long x = 0; x < rows; ++x) V.row(x) = row(x).transpose();
    return V;
  }

 protected:
  double eval_impl(long long x, long long y) const override {
    if (y < 0) throw std::domain_error("charlier_kernel: site < 0");
    return row(x).dot(row(y));
  }

 private:
  const Eigen::VectorXd& row(long long x) const {
    return cache_.row(x, [this](long long site) {
      return charlier_normalized_row(site, theta_, static_cast<int>(N_ - 1));
    });
  }

  long long N_;
  double theta_;
  detail::OrthonormalRowCache cache_;
};

// Rank-N Krawtchouk projection kernel on {0..L}.
class KrawtchoukKernel : public Kernel {
 public:
  KrawtchoukKernel(long long N, double p, long long L) : N_(N), L_(L), p_(p) {
    if (L < 1) throw std::domain_error("krawtchouk_kernel: L must be >= 1");
    if (p <= 0.0 || p >= 1.0)
      throw std::domain_error("krawtchouk_kernel: p not in (0,1)");
    if (N < 1 || N > L + 1)
      throw std::domain_error("krawtchouk_kernel: N out of [1, L+1]");
    ground_ = {GroundSet::Kind::Finite, 0, L};
    rank_ = N;
  }

  long long particles() const { return N_; }
  double p() const { return p_; }
  long long L() const { return L_; }

  std::optional<Eigen::MatrixXd> projection_basis() const override {
    const long long rows = L_ + 1;
    if (rows * N_ > 40'000'000)
      throw numeric_error("krawtchouk_kernel: basis too large to materialize");
    Eigen::MatrixXd V(rows, N_);
    for (long long x = 0; x < rows; ++x) V.row(x) = row(x).transpose();
    return V;
  }

 protected:
  double eval_impl(long long x, long long y) const override {
    if (y < 0 || x > L_)
      throw std::domain_error("krawtchouk_kernel: site out of {0..L}");
    return row(x).dot(row(y));
  }

 private:
  const Eigen::VectorXd& row(long long x) const {
    return cache_.row(x, [this](long long site) {
      return krawtchouk_normalized_row(site, p_, L_, static_cast<int>(N_ - 1));
    });
  }

  long long N_, L_;
  double p_;
  detail::OrthonormalRowCache cache_;
};

namespace detail {

// I(x, y) = int_a^inf e^{-t^2} H_x(t) H_y(t) dt for x >= y, assembled from
// the descent
//   I(x,y) = e^{-a^2} H_{x-1}(a) H_y(a) + 2y I(x-1, y-1)
// down to I(. , 0), every term carried in log space.  `log_pre` is added to
// each term's log-magnitude before exponentiation, so the caller can fold in
// the kernel prefactor and keep all exponentials O(1).
inline double hermite_descent_sum(long long x, long long y, double a,
                                  double log_pre) {
  const std::vector<SignedLog> H =
      hermite_logs(static_cast<int>(std::max<long long>(x, 1)), a);
  const double ln2 = std::log(2.0);
  const double lg_y1 = std::lgamma(static_cast<double>(y) + 1.0);
  double acc = 0.0;
  for (long long j = 0; j < y; ++j) {
    const SignedLog& h1 = H[static_cast<std::size_t>(x - 1 - j)];
    const SignedLog& h2 = H[static_cast<std::size_t>(y - j)];
    if (h1.sign == 0 || h2.sign == 0) continue;
    const double lt = log_pre + j * ln2 + lg_y1 -
                      std::lgamma(static_cast<double>(y - j) + 1.0) - a * a +
                      h1.logabs + h2.logabs;
    acc += h1.sign * h2.sign * std::exp(lt);
  }
  const double tail_pre = log_pre + y * ln2 + lg_y1;
  if (x == y) {
    acc += std::exp(tail_pre + std::log(std::sqrt(kPi) / 2.0) + lerfc(a));
  } else {
    const SignedLog& h = H[static_cast<std::size_t>(x - y - 1)];
    if (h.sign != 0) acc += h.sign * std::exp(tail_pre - a * a + h.logabs);
  }
  return acc;
}

}  // namespace detail

enum class HermiteForm {
  Integral,        // descent recursion for the half-line integral
  CD34,            // Christoffel-Darboux form with x H_{x-1} H_y - y H_x H_{y-1}
  CD35Corrected,   // numerator H_x H_{y+1} - H_{x+1} H_y
  CD35Printed      // numerator H_{x+1} H_y - H_x H_{y+1} (sign witness only)
};

namespace detail {

inline void hermite_guards(double s, long long x, long long y) {
  if (!(std::fabs(s) <= 40.0))
    throw std::domain_error("hermite_kernel: |s| exceeds 40");
  if (x < 0 || y < 0 || x > 300 || y > 300)
    throw std::domain_error("hermite_kernel: sites out of [0,300]");
}

inline double hermite_kernel_integral(double s, long long x, long long y) {
  hermite_guards(s, x, y);
  if (x < y) std::swap(x, y);
  const double a = s / std::sqrt(2.0);
  // prefactor (2 pi x! y! 2^{x+y})^{-1/2} * sqrt(2)
  const double log_pre =
      -0.5 * (std::log(2.0 * kPi) + std::lgamma(static_cast<double>(x) + 1.0) +
              std::lgamma(static_cast<double>(y) + 1.0) +
              (x + y) * std::log(2.0)) +
      0.5 * std::log(2.0);
  return hermite_descent_sum(x, y, a, log_pre);
}

inline double hermite_kernel_cd(double s, long long x, long long y,
                                bool corrected35, bool form35) {
  hermite_guards(s, x, y);
  if (x == y)
    throw std::domain_error("hermite_kernel_form: cd forms need x != y");
  const double a = s / std::sqrt(2.0);
  const std::vector<SignedLog> H =
      hermite_logs(static_cast<int>(std::max(x, y)) + 1, a);
  const double base =
      -0.5 * (std::lgamma(static_cast<double>(x) + 1.0) +
              std::lgamma(static_cast<double>(y) + 1.0) +
              (x + y) * std::log(2.0)) -
      0.5 * s * s;
  auto product = [&](long long i, long long j, double extra_log,
                     int extra_sign) {
    const SignedLog& hi = H[static_cast<std::size_t>(i)];
    const SignedLog& hj = H[static_cast<std::size_t>(j)];
    if (hi.sign == 0 || hj.sign == 0) return 0.0;
    return extra_sign * hi.sign * hj.sign *
           std::exp(base + extra_log + hi.logabs + hj.logabs);
  };
  double num = 0.0;
  if (!form35) {
    // (pi x! y! 2^{x+y})^{-1/2} e^{-s^2/2} [x H_{x-1} H_y - y H_x H_{y-1}]
    const double lp = -0.5 * std::log(kPi);
    if (x > 0)
      num += product(x - 1, y, lp + std::log(static_cast<double>(x)), +1);
    if (y > 0)
      num += product(x, y - 1, lp + std::log(static_cast<double>(y)), -1);
  } else {
    // (4 pi x! y! 2^{x+y})^{-1/2} e^{-s^2/2} [H_x H_{y+1} - H_{x+1} H_y]
    const double lp = -0.5 * std::log(4.0 * kPi);
    const int flip = corrected35 ? +1 : -1;
    num += product(x, y + 1, lp, +flip);
    num += product(x + 1, y, lp, -flip);
  }
  return num / static_cast<double>(x - y);
}

}  // namespace detail

// Entry of the discrete Hermite kernel with parameter s, via the stated
// analytic route.
inline double hermite_kernel_form(double s, long long x, long long y,
                                  HermiteForm form) {
  switch (form) {
    case HermiteForm::Integral:
      return detail::hermite_kernel_integral(s, x, y);
    case HermiteForm::CD34:
      return detail::hermite_kernel_cd(s, x, y, false, false);
    case HermiteForm::CD35Corrected:
      return detail::hermite_kernel_cd(s, x, y, true, true);
    case HermiteForm::CD35Printed:
      return detail::hermite_kernel_cd(s, x, y, false, true);
  }
  throw std::logic_error("hermite_kernel_form: unreachable");
}

// Discrete Hermite kernel: spectral projection of the Hermite operator onto
// [s, +infinity), evaluated by the quadrature-free integral recursion.
class HermiteKernel : public Kernel {
 public:
  explicit HermiteKernel(double s) : s_(s) {
    if (!(std::fabs(s) <= 40.0))
      throw std::domain_error("hermite_kernel: |s| exceeds 40");
    ground_ = {GroundSet::Kind::SemiInfinite, 0, 300};
  }

  double s() const { return s_; }

 protected:
  double eval_impl(long long x, long long y) const override {
    return detail::hermite_kernel_integral(s_, x, y);
  }

 private:
  double s_;
};

// Discrete sine kernel sin(phi (x-y)) / (pi (x-y)) on Z, diagonal phi/pi.
class SineKernel : public Kernel {
 public:
  explicit SineKernel(double phi) : phi_(phi) {
    if (!(phi >= 0.0 && phi <= detail::kPi))
      throw std::domain_error("sine_kernel: phi not in [0, pi]");
    ground_ = {GroundSet::Kind::Integers, 0, 0};
  }

  double phi() const { return phi_; }

 protected:
  double eval_impl(long long x, long long y) const override {
    if (x == y) return phi_ / detail::kPi;
    const double d = static_cast<double>(x - y);
    return std::sin(phi_ * d) / (detail::kPi * d);
  }

 private:
  double phi_;
};

// Bulk density angle phi = arccos( c(1-2p) / (2 sqrt((1-c^2) p (1-p))) ).
inline double phi_from_cp(double c, double p) {
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("phi_from_cp: p not in (0,1)");
  const double cmax = 2.0 * std::sqrt(p * (1.0 - p));
  if (!(std::fabs(c) < cmax))
    throw std::domain_error("phi_from_cp: |c| must be below 2 sqrt(p(1-p))");
  const double arg =
      c * (1.0 - 2.0 * p) / (2.0 * std::sqrt((1.0 - c * c) * p * (1.0 - p)));
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

// Spectral projection kernel sum_{mu_i in [a,b]} v_i v_i^T of a finite
// Jacobi operator.
class SpectralProjectionKernel : public Kernel {
 public:
  SpectralProjectionKernel(const JacobiOperator& J, double a, double b) {
    if (!(a <= b))
      throw std::domain_error("spectral_projection_kernel: empty interval");
    const Eigensystem es = eigensystem(J);
    std::vector<long long> selected;
    for (long long i = 0; i < es.values.size(); ++i)
      if (es.values(i) >= a && es.values(i) <= b) selected.push_back(i);
    basis_.resize(es.vectors.rows(), static_cast<long long>(selected.size()));
    for (std::size_t k = 0; k < selected.size(); ++k)
      basis_.col(static_cast<long long>(k)) = es.vectors.col(selected[k]);
    ground_ = {GroundSet::Kind::Finite, J.origin, J.origin + J.cutoff() - 1};
    rank_ = static_cast<long long>(selected.size());
  }

  std::optional<Eigen::MatrixXd> projection_basis() const override {
    return basis_;
  }

 protected:
  double eval_impl(long long x, long long y) const override {
    const long long i = x - ground_.lo, j = y - ground_.lo;
    if (j < 0 || i >= basis_.rows())
      throw std::domain_error("spectral_projection_kernel: site out of range");
    if (basis_.cols() == 0) return 0.0;
    return basis_.row(i).dot(basis_.row(j));
  }

 private:
  Eigen::MatrixXd basis_;
};

// ---------------------------------------------------------------------------
// Factories mirroring the operation names
// ---------------------------------------------------------------------------

inline CharlierKernel charlier_kernel(long long N, double theta) {
  return CharlierKernel(N, theta);
}

inline KrawtchoukKernel krawtchouk_kernel(long long N, double p, long long L) {
  return KrawtchoukKernel(N, p, L);
}

inline HermiteKernel hermite_kernel(double s) { return HermiteKernel(s); }

inline SineKernel sine_kernel(double phi) { return SineKernel(phi); }

inline SpectralProjectionKernel spectral_projection_kernel(
    const JacobiOperator& J, double a, double b) {
  return SpectralProjectionKernel(J, a, b);
}

}  // namespace dpe
