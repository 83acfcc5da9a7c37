// Acceptance suite: nine go/no-go checks covering exact combinatorics,
// measure equivalences, kernel identities, determinantal structure, the
// operator route, both scaling limits, limit shapes, and sampler statistics.
// Prints one line per criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dpe/dpe.hpp"
#include "oracles.hpp"

using namespace dpe;
using Clock = std::chrono::steady_clock;

namespace {

int g_failed = 0;

void report(int index, const char* title, bool ok, const std::string& detail,
            double seconds) {
  std::printf("[%s] %d. %-22s %s  (%.1fs)\n", ok ? "PASS" : "FAIL", index,
              title, detail.c_str(), seconds);
  if (!ok) ++g_failed;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

// 1. Burnside to n=10, Frobenius vs tableau counting to 8 boxes,
//    Schur-Weyl normalization for n<=8, N<=4 -- all exact.
void criterion1() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail = "exact";
  for (long long n = 1; n <= 10 && ok; ++n) {
    BigInt sum = 0;
    for (const Partition& l : partitions_of(n)) {
      const BigInt d = dim_sym(l);
      sum += d * d;
    }
    if (sum != exact::factorial(n)) {
      ok = false;
      detail = "Burnside failed at n=" + std::to_string(n);
    }
  }
  for (long long n = 0; n <= 8 && ok; ++n)
    for (const Partition& l : partitions_of(n))
      if (dim_sym(l) != oracles::syt_count(l)) {
        ok = false;
        detail = "Frobenius mismatch at " + l.to_string();
        break;
      }
  for (long long n = 1; n <= 8 && ok; ++n)
    for (long long N = 1; N <= 4 && ok; ++N) {
      Rational total = 0;
      for (const Partition& l : partitions_of(n, N))
        total += measure_weight_exact(MeasureSpec::schur_weyl(n, N), l);
      if (total != 1) {
        ok = false;
        detail = "Schur-Weyl sum != 1 at n=" + std::to_string(n) +
                 " N=" + std::to_string(N);
      }
    }
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  if (ok && secs > 30.0) {
    ok = false;
    detail = "runtime budget exceeded";
  }
  report(1, "exact combinatorics", ok, detail, secs);
}

// 2. Measure equivalences: lambda-wise constant rational ratios between
//    the partition measures and the polynomial ensembles, N<=3.
void criterion2() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail = "ratios constant (exact)";
  for (long long N = 1; N <= 3 && ok; ++N) {
    const auto ch = charlier_ratio_check(Rational(7, 3), N, 12);
    if (!ch.constant) {
      ok = false;
      detail = "Charlier ratio varies at N=" + std::to_string(N);
    }
    const auto kr = krawtchouk_ratio_check(Rational(2, 7), N);
    if (ok && !kr.constant) {
      ok = false;
      detail = "Krawtchouk ratio varies at N=" + std::to_string(N);
    }
  }
  report(2, "measure equivalence", ok, detail,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// 3. Discrete Hermite kernel: four routes pairwise within 1e-10
//    (1e-8 against quadrature) for x,y <= 30, s in {-3,-1,0,1,3};
//    spot values at s=0 within 1e-12.
void criterion3() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst_closed = 0.0, worst_quad = 0.0;
  for (double s : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    for (long long x = 0; x <= 30; ++x) {
      for (long long y = 0; y <= x; ++y) {
        const double integral =
            hermite_kernel_form(s, x, y, HermiteForm::Integral);
        auto quad = [&] {
          auto f = [&](double t) {
            return oracles::hermite_fn(x, t) * oracles::hermite_fn(y, t);
          };
          double T = std::max(s + 2.0,
                              2.0 * std::sqrt(2.0 * x + 1.0) + 8.0);
          while (std::fabs(oracles::hermite_fn(x, T) *
                           oracles::hermite_fn(y, T)) > 1e-18)
            T += 2.0;
          return detail::adaptive_simpson(f, s, T, 1e-12);
        };
        worst_quad = std::max(worst_quad, std::fabs(quad() - integral));
        if (x != y) {
          const double cd34 = hermite_kernel_form(s, x, y, HermiteForm::CD34);
          const double cd35 =
              hermite_kernel_form(s, x, y, HermiteForm::CD35Corrected);
          worst_closed = std::max({worst_closed, std::fabs(integral - cd34),
                                   std::fabs(integral - cd35),
                                   std::fabs(cd34 - cd35)});
        }
      }
    }
  }
  if (worst_closed >= 1e-10 || worst_quad >= 1e-8) ok = false;

  const double pi = detail::kPi;
  const double spots[3] = {
      std::fabs(hermite_kernel_form(0, 0, 0, HermiteForm::Integral) - 0.5),
      std::fabs(hermite_kernel_form(0, 0, 1, HermiteForm::Integral) -
                1.0 / std::sqrt(2.0 * pi)),
      std::fabs(hermite_kernel_form(0, 1, 2, HermiteForm::Integral) -
                1.0 / (2.0 * std::sqrt(pi)))};
  for (double d : spots)
    if (d >= 1e-12) ok = false;

  report(3, "hermite kernel routes", ok,
         "closed " + fmt("%.2e", worst_closed) + ", quad " +
             fmt("%.2e", worst_quad),
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// 4. Enumeration vs determinants: Krawtchouk N=2 L=3 within 1e-9;
//    Charlier N=2 theta=1, correlations compared on the window {0..8},
//    within 1e-6.
void criterion4() {
  const auto t0 = Clock::now();
  double worst_kr = 0.0;
  for (double p : {0.3, 0.5}) {
    const auto d = enumerate_ensemble(EnsembleSpec::krawtchouk(2, p, 3));
    const KrawtchoukKernel K(2, p, 3);
    for (long long x = 0; x <= 3; ++x) {
      worst_kr = std::max(worst_kr,
                          std::fabs(d.correlation({x}) - K.evaluate(x, x)));
      for (long long y = 0; y < x; ++y)
        worst_kr = std::max(worst_kr, std::fabs(d.correlation({x, y}) -
                                                correlation(K, {x, y})));
    }
  }
  const CharlierKernel C(2, 1.0);
  const auto dc = enumerate_ensemble(EnsembleSpec::charlier(2, 1.0),
                                     C.ground().hi);
  double worst_ch = 0.0;
  for (long long x = 0; x <= 8; ++x) {
    worst_ch = std::max(worst_ch,
                        std::fabs(dc.correlation({x}) - C.evaluate(x, x)));
    for (long long y = 0; y < x; ++y)
      worst_ch = std::max(worst_ch, std::fabs(dc.correlation({x, y}) -
                                              correlation(C, {x, y})));
  }
  const bool ok = worst_kr < 1e-9 && worst_ch < 1e-6;
  report(4, "determinantal structure", ok,
         "krawtchouk " + fmt("%.2e", worst_kr) + ", charlier " +
             fmt("%.2e", worst_ch),
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// 5. Operator route: Krawtchouk top-N spectral projection equals the
//    polynomial kernel within 1e-9 for N <= 10, L <= 40; truncated
//    Charlier projection matches within 1e-6 for N=20, theta=20, cutoff 400.
void criterion5() {
  const auto t0 = Clock::now();
  double worst_kr = 0.0;
  for (long long L : {12LL, 25LL, 40LL})
    for (double p : {0.3, 0.6})
      for (long long N = 1; N <= 10; ++N) {
        const double gap = 1.0 / (L * std::sqrt(p * (1.0 - p)));
        const SpectralProjectionKernel P(
            jacobi_krawtchouk_diff(p, L),
            krawtchouk_diff_eigenvalue(static_cast<int>(N) - 1, p, L) -
                0.25 * gap,
            1e9);
        const KrawtchoukKernel K(N, p, L);
        for (long long x = 0; x <= L; ++x)
          for (long long y = 0; y <= x; ++y)
            worst_kr = std::max(
                worst_kr, std::fabs(P.evaluate(x, y) - K.evaluate(x, y)));
      }

  const double theta = 20.0;
  const long long N = 20, cutoff = 400;
  const double left =
      (theta - N + 1) / std::sqrt(theta) - 0.25 / std::sqrt(theta);
  const SpectralProjectionKernel P(jacobi_charlier(theta, cutoff), left, 1e9);
  const CharlierKernel C(N, theta);
  double worst_ch = 0.0;
  for (long long x = 0; x <= C.ground().hi; ++x)
    for (long long y = 0; y <= x; ++y)
      worst_ch = std::max(worst_ch,
                          std::fabs(P.evaluate(x, y) - C.evaluate(x, y)));

  const bool ok = worst_kr < 1e-9 && worst_ch < 1e-6;
  report(5, "operator route", ok,
         "krawtchouk " + fmt("%.2e", worst_kr) + ", charlier " +
             fmt("%.2e", worst_ch),
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// 6. Edge limit surrogate: s=0, window {0..10}, grid {100,400,1600,6400};
//    distances finite, strictly decreasing, final < half the first.
void criterion6() {
  const auto t0 = Clock::now();
  std::vector<long long> window;
  for (long long x = 0; x <= 10; ++x) window.push_back(x);
  const auto rep = charlier_edge_sweep(0.0, {100, 400, 1600, 6400}, window);
  bool ok = rep.passed;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    if (!std::isfinite(rep.entries[i].second)) ok = false;
    if (i > 0 && rep.entries[i].second >= rep.entries[i - 1].second) ok = false;
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > 120.0) ok = false;
  report(6, "edge limit", ok,
         "d(100)=" + fmt("%.4f", rep.entries.front().second) +
             " d(6400)=" + fmt("%.4f", rep.entries.back().second),
         secs);
}

// 7. Bulk limit surrogate: c=0, p in {0.5, 0.3}, offsets {-5..5};
//    d(400) < d(25)/2 and the N=400 diagonal within 0.02 of phi/pi.
void criterion7() {
  const auto t0 = Clock::now();
  std::vector<long long> offsets;
  for (long long x = -5; x <= 5; ++x) offsets.push_back(x);
  bool ok = true;
  std::string summary;
  for (double p : {0.5, 0.3}) {
    const auto rep = krawtchouk_bulk_sweep(0.0, p, {25, 400}, offsets);
    if (!rep.passed) ok = false;
    const KrawtchoukKernel K(400, p, 799);
    const double diag_dev =
        std::fabs(K.evaluate(400, 400) - phi_from_cp(0.0, p) / detail::kPi);
    if (diag_dev >= 0.02) ok = false;
    summary += "p=" + fmt("%.1f", p) + " d(400)=" +
               fmt("%.5f", rep.entries.back().second) + " ";
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > 60.0) ok = false;
  report(7, "bulk limit", ok, summary, secs);
}

// 8. Limit shapes: Omega spot values and endpoint densities; F returns to
//    its anchor within 1e-6 and encloses area p within 1e-5 for
//    p in {0.2, 0.5, 0.7}; p=1/2 gives the flat curve within 1e-8.
void criterion8() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string summary = "ok";
  if (std::fabs(omega(0.0) - 4.0 / detail::kPi) >= 1e-12) ok = false;
  if (std::fabs(omega_density(2.0) - 1.0) >= 1e-10) ok = false;
  if (std::fabs(omega_density(-2.0)) >= 1e-10) ok = false;
  for (double p : {0.2, 0.5, 0.7}) {
    const auto c = limit_shape_F(p, 201);
    if (std::fabs(c.v.back() - c.v.front()) >= 1e-6) {
      ok = false;
      summary = "anchor miss at p=" + fmt("%.1f", p);
    }
    if (std::fabs(c.area - p) >= 1e-5) {
      ok = false;
      summary = "area " + fmt("%.6f", c.area) + " at p=" + fmt("%.1f", p);
    }
    if (p == 0.5)
      for (double v : c.v)
        if (std::fabs(v - 1.0) >= 1e-8) ok = false;
  }
  report(8, "limit shapes", ok, summary,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// 9. Sampler statistics: Krawtchouk N=8, L=15, p=1/2, 20000 seeded samples;
//    every sample has 8 points and the empirical one-point function sits
//    inside 3-sigma binomial bands at every site.
void criterion9() {
  const auto t0 = Clock::now();
  const KrawtchoukKernel K(8, 0.5, 15);
  std::mt19937_64 rng(0xD1CE);
  const int trials = 20000;
  std::vector<long long> counts(16, 0);
  bool ok = true;
  for (int i = 0; i < trials; ++i) {
    const auto cfg = sample(K, rng);
    if (cfg.count() != 8) ok = false;
    for (long long x : cfg.points) counts[static_cast<std::size_t>(x)]++;
  }
  double worst_z = 0.0;
  for (long long x = 0; x <= 15; ++x) {
    const double p = K.evaluate(x, x);
    const double sigma = std::sqrt(p * (1.0 - p) / trials);
    const double z =
        std::fabs(counts[static_cast<std::size_t>(x)] /
                      static_cast<double>(trials) -
                  p) /
        sigma;
    worst_z = std::max(worst_z, z);
  }
  if (worst_z >= 3.0) ok = false;
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > 60.0) ok = false;
  report(9, "sampler statistics", ok, "worst |z| = " + fmt("%.2f", worst_z),
         secs);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failed) {
    std::printf("%d criterion(s) failed\n", g_failed);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
