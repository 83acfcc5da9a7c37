#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace dpe {

// Thrown when an iterative numeric procedure fails (eigensolver no
// convergence, degenerate sampling mass, quadrature tolerance miss).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// sign/log-magnitude pair; value = sign * exp(logabs), sign==0 <=> value 0.
struct SignedLog {
  double logabs = -std::numeric_limits<double>::infinity();
  int sign = 0;
};

inline double to_double(const SignedLog& v) {
  if (v.sign == 0) return 0.0;
  return v.sign * std::exp(v.logabs);
}

// log(erfc(x)), valid for all finite x including the deep right tail
// where erfc underflows binary64.
inline double lerfc(double x) {
  if (x < 26.0) return std::log(std::erfc(x));
  // asymptotic erfc(x) = e^{-x^2}/(x sqrt(pi)) (1 - 1/2x^2 + 3/4x^4 - ...)
  const double ix2 = 1.0 / (x * x);
  const double series =
      1.0 + ix2 * (-0.5 + ix2 * (0.75 + ix2 * (-1.875 + ix2 * 6.5625)));
  return -x * x - std::log(x * std::sqrt(kPi)) + std::log(series);
}

// Physicists' Hermite values H_0(t)..H_n(t) as sign/log pairs.  The plain
// recurrence overflows near n ~ 150 for large |t|; a running rescale keeps
// mantissas inside [1e-140, 1e140].
inline std::vector<SignedLog> hermite_logs(int n, double t) {
  std::vector<SignedLog> out(static_cast<std::size_t>(n) + 1);
  double scale = 0.0;  // values are (h * e^scale)
  double hm = 0.0;     // H_{k-1} / e^scale
  double h = 1.0;      // H_k / e^scale
  out[0] = SignedLog{0.0, 1};
  for (int k = 0; k < n; ++k) {
    const double hp = 2.0 * t * h - 2.0 * k * hm;
    hm = h;
    h = hp;
    const double m = std::max(std::fabs(h), std::fabs(hm));
    if (m > 1e140) {
      h *= 1e-140;
      hm *= 1e-140;
      scale += std::log(1e140);
    } else if (m > 0.0 && m < 1e-140) {
      h *= 1e140;
      hm *= 1e140;
      scale -= std::log(1e140);
    }
    auto& slot = out[static_cast<std::size_t>(k) + 1];
    if (h == 0.0) {
      slot = SignedLog{};
    } else {
      slot.logabs = std::log(std::fabs(h)) + scale;
      slot.sign = h > 0.0 ? 1 : -1;
    }
  }
  return out;
}

// Deterministic, implementation-independent uniform in [0,1).
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Adaptive Simpson quadrature; plain recursion with an absolute tolerance.
template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) return left + right + delta / 15.0;
  if (std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int depth = 40) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace detail
}  // namespace dpe
