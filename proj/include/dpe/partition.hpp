#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpe/exact.hpp"

namespace dpe {

// Weakly decreasing sequence of positive integers, stored without
// trailing zeros.  The empty partition is Partition{}.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<long long> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0)
        throw std::invalid_argument("Partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }

  // Parses a comma-separated part list, e.g. "3,1,1".  "" is the empty
  // partition.
  static Partition parse(const std::string& text) {
    std::vector<long long> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
      if (token.empty()) continue;
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(token, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("Partition: bad part '" + token + "'");
      }
      if (pos != token.size())
        throw std::invalid_argument("Partition: bad part '" + token + "'");
      parts.push_back(v);
    }
    return Partition(std::move(parts));
  }

  const std::vector<long long>& parts() const { return parts_; }

  // |lambda|
  long long size() const {
    long long s = 0;
    for (long long p : parts_) s += p;
    return s;
  }

  // l(lambda), the number of nonzero parts
  long long length() const { return static_cast<long long>(parts_.size()); }

  // 1-based row length, zero beyond length()
  long long part(long long i) const {
    if (i < 1) throw std::out_of_range("Partition::part: index < 1");
    return i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0;
  }

  Partition conjugate() const {
    std::vector<long long> cols;
    if (!parts_.empty()) {
      cols.resize(static_cast<std::size_t>(parts_[0]));
      for (long long j = 1; j <= parts_[0]; ++j) {
        long long cnt = 0;
        for (long long p : parts_) {
          if (p >= j) ++cnt;
        }
        cols[static_cast<std::size_t>(j - 1)] = cnt;
      }
    }
    return Partition(std::move(cols));
  }

  bool contained_in_box(long long rows, long long cols) const {
    return length() <= rows && (parts_.empty() || parts_[0] <= cols);
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<long long> parts_;
};

// Finite configuration x_1 > x_2 > ... > x_N >= 0 on the nonnegative
// lattice (the N-point diagram encoding).
struct ParticleConfiguration {
  std::vector<long long> points;

  ParticleConfiguration() = default;
  explicit ParticleConfiguration(std::vector<long long> pts)
      : points(std::move(pts)) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] < 0)
        throw std::invalid_argument("ParticleConfiguration: negative point");
      if (i > 0 && points[i] >= points[i - 1])
        throw std::invalid_argument(
            "ParticleConfiguration: points must be strictly decreasing");
    }
  }

  long long count() const { return static_cast<long long>(points.size()); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(points[i]);
    }
    return s;
  }

  friend bool operator==(const ParticleConfiguration&,
                         const ParticleConfiguration&) = default;
};

// x_i = lambda_i + N - i, i = 1..N
inline ParticleConfiguration to_config(const Partition& lambda, long long N) {
  if (N < 1) throw std::domain_error("to_config: N must be positive");
  if (lambda.length() > N)
    throw std::domain_error("to_config: partition has more than N rows");
  std::vector<long long> pts(static_cast<std::size_t>(N));
  for (long long i = 1; i <= N; ++i)
    pts[static_cast<std::size_t>(i - 1)] = lambda.part(i) + N - i;
  return ParticleConfiguration(std::move(pts));
}

// Inverse of to_config: lambda_i = x_i - N + i
inline Partition from_config(const ParticleConfiguration& config) {
  const long long N = config.count();
  std::vector<long long> parts;
  parts.reserve(static_cast<std::size_t>(N));
  for (long long i = 1; i <= N; ++i) {
    const long long v = config.points[static_cast<std::size_t>(i - 1)] - N + i;
    if (v < 0) throw std::domain_error("from_config: invalid configuration");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

// Half-integers are carried as doubled (odd) integers so the lattice stays
// exact: the node k + 1/2 is the value 2k + 1.
//
// Returns the particles {lambda_i - i + 1/2} inside the closed window
// [lo/2, hi/2], in decreasing order.  The configuration is cofinite below:
// beyond l(lambda) every node -i + 1/2 is occupied.
inline std::vector<long long> frontier(const Partition& lambda, long long lo2,
                                       long long hi2) {
  if (lo2 > hi2) throw std::invalid_argument("frontier: empty window");
  std::vector<long long> out;
  for (long long i = 1; i <= lambda.length(); ++i) {
    const long long k2 = 2 * (lambda.part(i) - i) + 1;
    if (k2 >= lo2 && k2 <= hi2) out.push_back(k2);
  }
  for (long long i = lambda.length() + 1;; ++i) {
    const long long k2 = -2 * i + 1;
    if (k2 < lo2) break;
    if (k2 <= hi2) out.push_back(k2);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// dim(lambda), the number of standard tableaux, through the quotient of the
// Vandermonde of x_i = lambda_i + N - i by prod x_i! scaled by |lambda|!.
inline BigInt dim_sym(const Partition& lambda) {
  const long long N = lambda.length();
  if (N == 0) return 1;
  std::vector<long long> x(static_cast<std::size_t>(N));
  for (long long i = 1; i <= N; ++i)
    x[static_cast<std::size_t>(i - 1)] = lambda.part(i) + N - i;
  BigInt num = exact::factorial(lambda.size());
  for (long long i = 0; i < N; ++i)
    for (long long j = i + 1; j < N; ++j)
      num *= (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
  BigInt den = 1;
  for (long long v : x) den *= exact::factorial(v);
  BigInt q, r;
  divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("dim_sym: non-integral quotient");
  return q;
}

// Dim_N(lambda) = prod_{i<j} (x_i - x_j)/(j - i), x_i = lambda_i + N - i.
inline BigInt dim_un(const Partition& lambda, long long N) {
  if (N < 1) throw std::domain_error("dim_un: N must be positive");
  if (lambda.length() > N)
    throw std::domain_error("dim_un: partition has more than N rows");
  BigInt num = 1, den = 1;
  for (long long i = 1; i <= N; ++i) {
    for (long long j = i + 1; j <= N; ++j) {
      num *= (lambda.part(i) - lambda.part(j)) + (j - i);
      den *= (j - i);
    }
  }
  BigInt q, r;
  divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("dim_un: non-integral quotient");
  return q;
}

// Complement diagram in the N x M rectangle, read bottom-to-top.
inline Partition hat(const Partition& lambda, long long N, long long M) {
  if (N < 1 || M < 1) throw std::domain_error("hat: box must be nonempty");
  if (!lambda.contained_in_box(N, M))
    throw std::domain_error("hat: partition not contained in the box");
  std::vector<long long> parts(static_cast<std::size_t>(N));
  for (long long i = 1; i <= N; ++i)
    parts[static_cast<std::size_t>(i - 1)] = M - lambda.part(N + 1 - i);
  return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Measures on partitions
// ---------------------------------------------------------------------------

class MeasureSpec {
 public:
  enum class Family {
    Plancherel,       // (dim)^2 / n!
    SchurWeyl,        // dim * Dim_N / N^n
    PoissonSchurWeyl, // e^{-nu} nu^n / n! * SchurWeyl
    Rectangle,        // dim(lambda) dim(hat) / dim(M^N), |lambda| = n
    MixKrawtchouk     // binomial(p, N^2) mixture of Rectangle(., N, N)
  };

  static MeasureSpec plancherel(long long n) {
    if (n < 1) throw std::domain_error("plancherel: n must be positive");
    MeasureSpec s;
    s.family_ = Family::Plancherel;
    s.n_ = n;
    return s;
  }
  static MeasureSpec schur_weyl(long long n, long long N) {
    if (n < 1 || N < 1) throw std::domain_error("schur_weyl: bad parameters");
    MeasureSpec s;
    s.family_ = Family::SchurWeyl;
    s.n_ = n;
    s.N_ = N;
    return s;
  }
  static MeasureSpec poisson_schur_weyl(Rational nu, long long N) {
    if (nu <= 0 || N < 1)
      throw std::domain_error("poisson_schur_weyl: bad parameters");
    MeasureSpec s;
    s.family_ = Family::PoissonSchurWeyl;
    s.nu_ = std::move(nu);
    s.N_ = N;
    return s;
  }
  static MeasureSpec rectangle(long long n, long long N, long long M) {
    if (N < 1 || M < 1 || n < 0 || n > N * M)
      throw std::domain_error("rectangle: bad parameters");
    MeasureSpec s;
    s.family_ = Family::Rectangle;
    s.n_ = n;
    s.N_ = N;
    s.M_ = M;
    return s;
  }
  static MeasureSpec mix_krawtchouk(Rational p, long long N) {
    if (p <= 0 || p >= 1 || N < 1)
      throw std::domain_error("mix_krawtchouk: bad parameters");
    MeasureSpec s;
    s.family_ = Family::MixKrawtchouk;
    s.p_ = std::move(p);
    s.N_ = N;
    return s;
  }

  Family family() const { return family_; }
  long long n() const { return n_; }
  long long N() const { return N_; }
  long long M() const { return M_; }
  const Rational& nu() const { return nu_; }
  const Rational& p() const { return p_; }

 private:
  Family family_ = Family::Plancherel;
  long long n_ = 0, N_ = 0, M_ = 0;
  Rational nu_ = 0, p_ = 0;
};

// Exact weight as a rational.  For PoissonSchurWeyl the global factor
// e^{-nu} is dropped (it is irrational); every weight is reported modulo
// that one constant so ratios stay exact.
inline Rational measure_weight_exact(const MeasureSpec& spec,
                                     const Partition& lambda) {
  switch (spec.family()) {
    case MeasureSpec::Family::Plancherel: {
      if (lambda.size() != spec.n())
        throw std::domain_error("measure_weight: |lambda| != n");
      const BigInt d = dim_sym(lambda);
      return Rational(d * d, exact::factorial(spec.n()));
    }
    case MeasureSpec::Family::SchurWeyl: {
      if (lambda.size() != spec.n())
        throw std::domain_error("measure_weight: |lambda| != n");
      if (lambda.length() > spec.N())
        throw std::domain_error("measure_weight: more than N rows");
      const BigInt num = dim_sym(lambda) * dim_un(lambda, spec.N());
      const BigInt den = boost::multiprecision::pow(
          BigInt(spec.N()), static_cast<unsigned>(spec.n()));
      return Rational(num, den);
    }
    case MeasureSpec::Family::PoissonSchurWeyl: {
      if (lambda.length() > spec.N())
        throw std::domain_error("measure_weight: more than N rows");
      const long long n = lambda.size();
      Rational w = exact::pow(spec.nu(), n);
      w /= exact::factorial(n);
      w *= dim_sym(lambda) * dim_un(lambda, spec.N());
      w /= boost::multiprecision::pow(BigInt(spec.N()),
                                      static_cast<unsigned>(n));
      return w;
    }
    case MeasureSpec::Family::Rectangle: {
      if (lambda.size() != spec.n())
        throw std::domain_error("measure_weight: |lambda| != n");
      if (!lambda.contained_in_box(spec.N(), spec.M()))
        throw std::domain_error("measure_weight: not inside the rectangle");
      const Partition lhat = hat(lambda, spec.N(), spec.M());
      std::vector<long long> box(static_cast<std::size_t>(spec.N()), spec.M());
      return Rational(dim_sym(lambda) * dim_sym(lhat),
                      dim_sym(Partition(box)));
    }
    case MeasureSpec::Family::MixKrawtchouk: {
      if (!lambda.contained_in_box(spec.N(), spec.N()))
        throw std::domain_error("measure_weight: not inside the square");
      const long long n = lambda.size();
      const long long NN = spec.N() * spec.N();
      const Partition lhat = hat(lambda, spec.N(), spec.N());
      std::vector<long long> box(static_cast<std::size_t>(spec.N()), spec.N());
      Rational w = exact::binomial(NN, n);
      w *= exact::pow(spec.p(), n);
      w *= exact::pow(Rational(1) - spec.p(), NN - n);
      w *= dim_sym(lambda) * dim_sym(lhat);
      w /= dim_sym(Partition(box));
      return w;
    }
  }
  throw std::logic_error("measure_weight: unreachable");
}

// Floating weight in [0,1]; for PoissonSchurWeyl this includes the e^{-nu}
// factor.
inline double measure_weight(const MeasureSpec& spec, const Partition& lambda) {
  const Rational w = measure_weight_exact(spec, lambda);
  double v = w.convert_to<double>();
  if (spec.family() == MeasureSpec::Family::PoissonSchurWeyl)
    v *= std::exp(-spec.nu().convert_to<double>());
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration helpers (small supports only)
// ---------------------------------------------------------------------------

namespace detail {
inline void partitions_rec(long long remaining, long long max_part,
                           long long max_len, std::vector<long long>& acc,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(acc);
    return;
  }
  if (max_len == 0) return;
  for (long long p = std::min(remaining, max_part); p >= 1; --p) {
    acc.push_back(p);
    partitions_rec(remaining - p, p, max_len - 1, acc, out);
    acc.pop_back();
  }
}
}  // namespace detail

// All partitions of n with at most max_len rows and parts at most max_part
// (-1 means unbounded).
inline std::vector<Partition> partitions_of(long long n, long long max_len = -1,
                                            long long max_part = -1) {
  if (n < 0) throw std::domain_error("partitions_of: n < 0");
  std::vector<Partition> out;
  std::vector<long long> acc;
  detail::partitions_rec(n, max_part < 0 ? n : std::min(n, max_part),
                         max_len < 0 ? n : max_len, acc, out);
  return out;
}

// All partitions contained in the N x M box, any size.
inline std::vector<Partition> partitions_in_box(long long N, long long M) {
  std::vector<Partition> out;
  for (long long n = 0; n <= N * M; ++n) {
    auto layer = partitions_of(n, N, M);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace dpe
