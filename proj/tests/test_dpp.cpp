#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <random>

#include "dpe/dpp.hpp"

using namespace dpe;
using Catch::Matchers::WithinAbs;

TEST_CASE("correlation functions", "[dpp]") {
  const SineKernel half(detail::kPi / 2.0);

  SECTION("one point is the diagonal") {
    CHECK(correlation(half, {4}) == half.evaluate(4, 4));
  }

  SECTION("two points of the half-filled sine process") {
    const double expected = 0.25 - 1.0 / (detail::kPi * detail::kPi);
    CHECK_THAT(correlation(half, {0, 1}), WithinAbs(expected, 1e-14));
    CHECK_THAT(correlation(half, {0, 1}), WithinAbs(0.148678, 1e-6));
  }

  SECTION("identity kernel gives correlation one") {
    const SineKernel id(detail::kPi);
    CHECK_THAT(correlation(id, {-2, 0, 5}), WithinAbs(1.0, 1e-12));
  }

  SECTION("duplicates rejected") {
    CHECK_THROWS_AS(correlation(half, {1, 1}), std::invalid_argument);
  }
}

TEST_CASE("window distributions", "[dpp]") {
  const CharlierKernel K(2, 3.0);

  SECTION("one-point window") {
    const auto d = window_distribution(K, {4});
    CHECK_THAT(d.probability({4}), WithinAbs(K.evaluate(4, 4), 1e-14));
    CHECK_THAT(d.probability({}), WithinAbs(1.0 - K.evaluate(4, 4), 1e-14));
  }

  SECTION("two-point window matches inclusion-exclusion by hand") {
    const long long a = 1, b = 4;
    const auto d = window_distribution(K, {a, b});
    const double r1a = correlation(K, {a});
    const double r1b = correlation(K, {b});
    const double r2 = correlation(K, {a, b});
    CHECK_THAT(d.probability({a, b}), WithinAbs(r2, 1e-13));
    CHECK_THAT(d.probability({a}), WithinAbs(r1a - r2, 1e-13));
    CHECK_THAT(d.probability({b}), WithinAbs(r1b - r2, 1e-13));
    CHECK_THAT(d.probability({}), WithinAbs(1.0 - r1a - r1b + r2, 1e-13));
  }

  SECTION("probabilities sum to one") {
    for (const Kernel* k :
         {static_cast<const Kernel*>(&K)}) {
      const auto d = window_distribution(*k, {0, 1, 2, 5, 7});
      double total = 0.0;
      for (double p : d.probabilities) total += p;
      CHECK_THAT(total, WithinAbs(1.0, 1e-10));
    }
    const SineKernel s(1.3);
    const auto d = window_distribution(s, {-2, -1, 0, 1, 2});
    double total = 0.0;
    for (double p : d.probabilities) total += p;
    CHECK_THAT(total, WithinAbs(1.0, 1e-10));
  }

  SECTION("rank-2 projection on four sites has exactly two particles") {
    const KrawtchoukKernel kr(2, 0.5, 3);
    const auto d = window_distribution(kr, {0, 1, 2, 3});
    double two = 0.0;
    for (std::size_t mask = 0; mask < d.probabilities.size(); ++mask)
      if (std::popcount(static_cast<unsigned>(mask)) == 2)
        two += d.probabilities[mask];
    CHECK_THAT(two, WithinAbs(1.0, 1e-10));
  }

  SECTION("mean particle count is the diagonal sum") {
    const auto d = window_distribution(K, {0, 1, 2, 3, 4, 5});
    double diag = 0.0;
    for (long long x = 0; x <= 5; ++x) diag += K.evaluate(x, x);
    CHECK_THAT(d.mean_count(), WithinAbs(diag, 1e-9));
  }

  SECTION("window guard") {
    std::vector<long long> big(21);
    for (long long i = 0; i < 21; ++i) big[static_cast<std::size_t>(i)] = i;
    CHECK_THROWS_AS(window_distribution(K, big), std::domain_error);
  }
}

TEST_CASE("projection sampling", "[dpp]") {
  std::mt19937_64 rng(0xD1CE);

  SECTION("full-rank kernel yields the whole ground set") {
    const KrawtchoukKernel K(6, 0.4, 5);
    const auto cfg = sample(K, rng);
    CHECK(cfg.points == std::vector<long long>{5, 4, 3, 2, 1, 0});
  }

  SECTION("every sample has exactly N points") {
    const KrawtchoukKernel K(5, 0.4, 12);
    const CharlierKernel C(3, 6.0);
    for (int i = 0; i < 100; ++i) {
      CHECK(sample(K, rng).count() == 5);
      CHECK(sample(C, rng).count() == 3);
    }
  }

  SECTION("same seed, same draw") {
    const KrawtchoukKernel K(4, 0.3, 9);
    std::mt19937_64 r1(42), r2(42);
    CHECK(sample(K, r1) == sample(K, r2));
  }

  SECTION("rank-one marginals follow the diagonal") {
    const KrawtchoukKernel K(1, 0.3, 6);
    const int trials = 5000;
    std::vector<int> counts(7, 0);
    for (int i = 0; i < trials; ++i) {
      const auto cfg = sample(K, rng);
      REQUIRE(cfg.count() == 1);
      counts[static_cast<std::size_t>(cfg.points[0])]++;
    }
    for (long long x = 0; x <= 6; ++x) {
      const double p = K.evaluate(x, x);
      const double sigma = std::sqrt(p * (1.0 - p) / trials);
      CHECK(std::fabs(counts[static_cast<std::size_t>(x)] /
                          static_cast<double>(trials) -
                      p) < 4.0 * sigma);
    }
  }

  SECTION("empirical two-point function follows the determinant") {
    const KrawtchoukKernel K(4, 0.5, 7);
    std::mt19937_64 r(0xD1CE);
    const int trials = 20000;
    const std::vector<std::pair<long long, long long>> pairs{
        {0, 1}, {2, 5}, {3, 4}, {1, 6}};
    std::vector<int> hits(pairs.size(), 0);
    for (int i = 0; i < trials; ++i) {
      const auto cfg = sample(K, r);
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        const bool a = std::binary_search(cfg.points.rbegin(),
                                          cfg.points.rend(), pairs[j].first);
        const bool b = std::binary_search(cfg.points.rbegin(),
                                          cfg.points.rend(), pairs[j].second);
        if (a && b) hits[j]++;
      }
    }
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const double rho =
          correlation(K, {pairs[j].first, pairs[j].second});
      const double sigma = std::sqrt(rho * (1.0 - rho) / trials);
      CHECK(std::fabs(hits[j] / static_cast<double>(trials) - rho) <
            3.0 * sigma);
    }
  }

  SECTION("kernels without finite rank are rejected") {
    const SineKernel s(1.0);
    CHECK_THROWS_AS(sample(s, rng), std::domain_error);
  }
}

TEST_CASE("ensemble enumeration", "[dpp]") {
  SECTION("one krawtchouk particle is the weight itself") {
    const auto d = enumerate_ensemble(EnsembleSpec::krawtchouk(1, 0.5, 1));
    REQUIRE(d.configs.size() == 2);
    CHECK_THAT(d.correlation({0}), WithinAbs(0.5, 1e-14));
    CHECK_THAT(d.correlation({1}), WithinAbs(0.5, 1e-14));
  }

  SECTION("krawtchouk N=2 L=3 marginals match the kernel exactly") {
    for (double p : {0.3, 0.5}) {
      const auto d = enumerate_ensemble(EnsembleSpec::krawtchouk(2, p, 3));
      const KrawtchoukKernel K(2, p, 3);
      for (long long x = 0; x <= 3; ++x) {
        CHECK_THAT(d.correlation({x}), WithinAbs(K.evaluate(x, x), 1e-12));
        for (long long y = 0; y < x; ++y)
          CHECK_THAT(d.correlation({x, y}),
                     WithinAbs(correlation(K, {x, y}), 1e-12));
      }
    }
  }

  SECTION("three-point correlations stay determinantal") {
    const auto d = enumerate_ensemble(EnsembleSpec::krawtchouk(3, 0.3, 7));
    const KrawtchoukKernel K(3, 0.3, 7);
    CHECK_THAT(d.correlation({0, 2, 5}),
               WithinAbs(correlation(K, {0, 2, 5}), 1e-9));
    CHECK_THAT(d.correlation({1, 4, 6}),
               WithinAbs(correlation(K, {1, 4, 6}), 1e-9));
  }

  SECTION("charlier truncation bias on a tiny ground set") {
    // With ground {0..8} the conditioned table differs from the exact
    // determinant by the truncation tail, measured at ~1e-5; the library
    // truncation (x <= 80) removes it.
    const CharlierKernel K(2, 1.0);
    const auto tiny = enumerate_ensemble(EnsembleSpec::charlier(2, 1.0), 8);
    const double dev_tiny =
        std::fabs(tiny.correlation({0, 1}) - correlation(K, {0, 1}));
    CHECK(dev_tiny < 2e-5);
    const auto wide = enumerate_ensemble(EnsembleSpec::charlier(2, 1.0), 80);
    const double dev_wide =
        std::fabs(wide.correlation({0, 1}) - correlation(K, {0, 1}));
    CHECK(dev_wide < 1e-9);
  }

  SECTION("combinatorial guard") {
    CHECK_THROWS_AS(enumerate_ensemble(EnsembleSpec::charlier(10, 5.0), 399),
                    std::domain_error);
  }
}

TEST_CASE("exact measure equivalences", "[dpp]") {
  SECTION("poissonized Schur-Weyl is the Charlier ensemble") {
    const auto rep = charlier_ratio_check(Rational(3), 2, 12);
    CHECK(rep.constant);
    CHECK(rep.checked == 49);
  }

  SECTION("single particle reduces to the Poisson weight") {
    const auto rep = charlier_ratio_check(Rational(5, 2), 1, 12);
    CHECK(rep.constant);
  }

  SECTION("mixture measure is the Krawtchouk ensemble") {
    const auto rep = krawtchouk_ratio_check(Rational(1, 3), 2);
    CHECK(rep.constant);
    CHECK(rep.checked == 6);
  }

  SECTION("three rows") {
    CHECK(charlier_ratio_check(Rational(7, 2), 3, 9).constant);
    CHECK(krawtchouk_ratio_check(Rational(2, 5), 3).constant);
  }
}
