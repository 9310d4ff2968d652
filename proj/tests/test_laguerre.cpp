#include "doctest.h"

#include "htwave/error.hpp"
#include "htwave/laguerre.hpp"

#include <cmath>

using namespace htwave;
using namespace htwave::laguerre;

namespace {

// sum_i (-1)^i binom(m + gamma, m - i) tau^i / i!, in extended precision to
// absorb the cancellation between terms.
double series(int m, int gamma, double tau) {
  long double sum = 0.0L, power = 1.0L;
  for (int i = 0; i <= m; ++i) {
    if (i > 0) power *= static_cast<long double>(tau) / i;
    sum += (i % 2 ? -1.0L : 1.0L) * static_cast<long double>(binomial(m + gamma, m - i)) * power;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("polynomial examples") {
  CHECK(laguerre_polynomial({0, 4}, 3.3) == 1.0);
  CHECK(laguerre_polynomial({1, 3}, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(laguerre_polynomial({2, 0}, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("recurrence matches the series and the standard library") {
  for (int gamma = 0; gamma <= 3; ++gamma)
    for (int m = 0; m <= 20; ++m)
      for (double tau : {0.0, 0.3, 1.7, 3.7, 12.5, 30.0}) {
        const double rec = laguerre_polynomial({m, gamma}, tau);
        if (tau < 4.0) CHECK(std::abs(rec - series(m, gamma, tau)) <= 1e-12 * std::max(1.0, std::abs(rec)));
        CHECK(std::abs(rec - std::assoc_laguerre(m, gamma, tau)) <= 1e-11 * std::max(1.0, std::abs(rec)));
      }
  const double f = laguerre_function({5, 1}, 3.7);
  CHECK(std::abs(f - series(5, 1, 3.7) * std::exp(-1.85)) < 1e-12);
}

TEST_CASE("function examples") {
  for (double tau : {0.0, 0.5, 7.0}) CHECK(laguerre_function({0, 1}, tau) == doctest::Approx(std::exp(-tau / 2)));
  for (int gamma = 0; gamma < 4; ++gamma) CHECK(laguerre_function({0, gamma}, 0.0) == 1.0);
  for (int m = 0; m < 10; ++m) CHECK(laguerre_function({m, 2}, 0.0) == doctest::Approx(binomial(m + 2, m)));
}

TEST_CASE("damped sequence agrees with direct evaluation and survives large tau") {
  std::vector<double> seq;
  for (double tau : {0.1, 4.0, 80.0, 400.0}) {
    laguerre_function_sequence(60, 1, tau, seq);
    REQUIRE(seq.size() == 61);
    for (int m = 0; m <= 60; ++m) {
      const double direct = std::assoc_laguerre(m, 1, tau) * std::exp(-tau / 2);
      CHECK(std::abs(seq[m] - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
  laguerre_function_sequence(300, 0, 2000.0, seq);
  for (double v : seq) CHECK(std::isfinite(v));
  CHECK(std::abs(seq[0]) < 1e-300);
  CHECK(std::isfinite(laguerre_function({10, 0}, 1500.0)));
}

TEST_CASE("tau log derivative") {
  for (double tau : {0.2, 1.0, 6.0}) {
    CHECK(tau_log_derivative({4, 1}, 0, tau) == doctest::Approx(laguerre_function({4, 1}, tau)));
    CHECK(tau_log_derivative({0, 2}, 1, tau) == doctest::Approx(-0.5 * tau * std::exp(-tau / 2)));
  }
  // Fourth-order central differences of (tau d/dtau) applied twice.
  const double tau = 1.5, h = 1e-3;
  const auto f = [](double x) { return laguerre_function({3, 2}, x); };
  const auto d1 = [&](const auto& g, double x) {
    return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
  };
  const auto once = [&](double x) { return x * d1(f, x); };
  const double fd = tau * d1(once, tau);
  const double exact = tau_log_derivative({3, 2}, 2, tau);
  CHECK(std::abs(fd - exact) <= 1e-8 * std::abs(exact));
}

TEST_CASE("growth check rows") {
  for (int d = 1; d <= 3; ++d) {
    const auto rows = laguerre_growth_check(d - 1, 0, 10);
    CHECK(rows[0].sup_value == doctest::Approx(1.0));
    CHECK(rows[0].bound_ratio == doctest::Approx(std::pow(d, -(d - 0.25))));
  }
  const auto rows = laguerre_growth_check(0, 0, 100);
  REQUIRE(rows.size() == 101);
  CHECK(summarize(rows).bounded());
  CHECK(growth_csv(rows).rfind("m,", 0) == 0);
}

TEST_CASE("growth check is stable under grid refinement") {
  const auto coarse = laguerre_growth_check(1, 1, 50);
  GrowthOptions fine_opts;
  fine_opts.n_points = 80 * 50;
  const auto fine = laguerre_growth_check(1, 1, 50, fine_opts);
  double cmax = 0.0, fmax = 0.0;
  for (const auto& r : coarse) cmax = std::max(cmax, r.bound_ratio);
  for (const auto& r : fine) fmax = std::max(fmax, r.bound_ratio);
  CHECK(std::abs(fmax / cmax - 1.0) <= 0.1);
}

TEST_CASE("growth check preconditions") {
  GrowthOptions opts;
  opts.n_points = 100;
  try {
    laguerre_growth_check(0, 0, 50, opts);
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
  CHECK_THROWS_AS(laguerre_growth_check(0, 2, 20), Error);
}
