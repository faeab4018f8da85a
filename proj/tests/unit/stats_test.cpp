#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "normal_oracle.hpp"
#include "suites.hpp"
#include "teleo/dataset.hpp"
#include "teleo/error.hpp"
#include "teleo/random.hpp"
#include "teleo/repro.hpp"
#include "teleo/sampling.hpp"
#include "teleo/stats.hpp"

using namespace teleo;

namespace {

Dataset independent_bernoullis(std::size_t n, std::uint64_t seed) {
  Dataset d({"a", "b"});
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double row[2] = {rng.bernoulli(0.5), rng.bernoulli(0.5)};
    d.append_row(row);
  }
  return d;
}

}  // namespace

TEST_CASE("standard normal CDF") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std::fabs(std_normal_cdf(1.959964) - oracle::phi(1.959964)) <= 1e-7);
  CHECK(std::fabs(std_normal_cdf(1.959964) - 0.975) <= 1e-6);
  CHECK(std::fabs(std_normal_cdf(0.5) - 0.691462) <= 1e-6);
  CHECK(testing_support::phi_max_error(1000) <= 1e-7);
  double prev = 0.0;
  for (int i = -400; i <= 400; ++i) {
    const double z = i / 50.0;
    const double p = std_normal_cdf(z);
    CHECK(p >= prev);
    CHECK(std::fabs(p + std_normal_cdf(-z) - 1.0) <= 1e-7);
    prev = p;
  }
}

TEST_CASE("correlations") {
  Dataset d({"x", "y", "z"});
  Rng rng(3);
  for (int i = 0; i < 400; ++i) {
    const double x = rng.normal(0, 1);
    const double row[3] = {x, x, rng.normal(0, 1)};
    d.append_row(row);
  }
  CHECK(partial_correlation(d, "x", "y", {}) == doctest::Approx(1.0));
  CHECK(std::fabs(partial_correlation(d, "x", "z", {}) - pearson_correlation(d.column("x"), d.column("z"))) <= 1e-12);

  double total = 0.0;
  for (std::uint64_t s = 1; s <= 5; ++s) total += std::fabs(partial_correlation(independent_bernoullis(10'000, s), "a", "b", {}));
  CHECK(total / 5 < 0.03);

  const Dataset heat = sample_dataset(heating_model(), 10'000, 1);
  CHECK(std::fabs(partial_correlation(heat, "W", "H", {"T"})) > 0.2);
}

TEST_CASE("partial correlation matches regression residuals") {
  // x = z + e1, y = z + e2: corr(x, y) = 0.5, corr(x, y | z) = 0.
  Dataset d({"x", "y", "z"});
  Rng rng(4);
  for (int i = 0; i < 20'000; ++i) {
    const double z = rng.normal(0, 1);
    const double row[3] = {z + rng.normal(0, 1), z + rng.normal(0, 1), z};
    d.append_row(row);
  }
  CHECK(partial_correlation(d, "x", "y", {}) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::fabs(partial_correlation(d, "x", "y", {"z"})) < 0.03);
}

TEST_CASE("degenerate inputs") {
  Dataset d({"c", "x"});
  for (int i = 0; i < 10; ++i) {
    const double row[2] = {1.0, double(i)};
    d.append_row(row);
  }
  CHECK_THROWS_AS(partial_correlation(d, "c", "x", {}), DegenerateInput);
  CHECK_THROWS_AS(partial_correlation(d.select({"x"}), "x", "x", {}), DegenerateInput);
  Dataset tiny({"a", "b", "z"});
  for (int i = 0; i < 4; ++i) {
    const double row[3] = {double(i), double(i * i), double(i % 2)};
    tiny.append_row(row);
  }
  CHECK_THROWS_AS(partial_correlation(tiny, "a", "b", {"z"}), DegenerateInput);
}

TEST_CASE("Fisher z-test") {
  const TestResult zero = fisher_z_test(0.0, 10'000, 0, 0.05);
  CHECK(zero.p_value == 1.0);
  CHECK_FALSE(zero.dependent);

  const TestResult edge = fisher_z_test(0.0196, 10'000, 0, 0.05);
  CHECK(std::fabs(edge.p_value - 0.050) <= 0.002);
  CHECK(std::fabs(edge.p_value - oracle::two_sided_p(std::atanh(0.0196) * std::sqrt(9997.0))) <= 1e-9);

  const TestResult one = fisher_z_test(1.0, 100, 0, 0.05);
  CHECK(one.p_value == 0.0);
  CHECK(one.dependent);
  CHECK(fisher_z_test(-1.0, 100, 0, 0.05).dependent);

  // Conditioning reduces the effective sample size.
  CHECK(fisher_z_test(0.1, 50, 2, 0.05).statistic == doctest::Approx(std::atanh(0.1) * std::sqrt(45.0)));

  CHECK_THROWS_AS(fisher_z_test(0.1, 3, 0, 0.05), DegenerateInput);
  CHECK_THROWS_AS(fisher_z_test(0.1, 5, 2, 0.05), DegenerateInput);
  CHECK_THROWS_AS(fisher_z_test(1.5, 100, 0, 0.05), DegenerateInput);

  double prev = 2.0;
  for (int i = 0; i <= 50; ++i) {
    const double p = fisher_z_test(i / 500.0, 1000, 0, 0.05).p_value;
    CHECK(p <= prev);
    prev = p;
  }
  prev = 2.0;
  for (std::size_t n = 10; n <= 2000; n += 10) {
    const double p = fisher_z_test(0.05, n, 0, 0.05).p_value;
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("dependent iff p < alpha") {
  for (int i = -20; i <= 20; ++i) {
    const TestResult t = fisher_z_test(i / 200.0, 400, 1, 0.05);
    CHECK(t.dependent == (t.p_value < 0.05));
    CHECK(t.p_value >= 0.0);
    CHECK(t.p_value <= 1.0);
    CHECK(t.alpha == 0.05);
  }
}

TEST_CASE("two-proportion test") {
  const TestResult same = two_proportion_test(5000, 10'000, 5000, 10'000, 0.05);
  CHECK(same.p_value == 1.0);
  CHECK_FALSE(same.dependent);

  const TestResult shift = two_proportion_test(5960, 10'000, 0, 10'000, 0.05);
  CHECK(shift.p_value < 1e-10);
  CHECK(shift.dependent);

  // Pooled z against the oracle.
  const double p1 = 0.52, p2 = 0.5, pooled = 0.51;
  const double z = (p1 - p2) / std::sqrt(pooled * (1 - pooled) * (2.0 / 10'000));
  const TestResult small = two_proportion_test(5200, 10'000, 5000, 10'000, 0.05);
  CHECK(small.statistic == doctest::Approx(z));
  CHECK(std::fabs(small.p_value - oracle::two_sided_p(z)) <= 1e-9);

  CHECK(two_proportion_test(0, 10, 0, 20, 0.05).p_value == 1.0);
  CHECK(two_proportion_test(10, 10, 20, 20, 0.05).p_value == 1.0);
  CHECK_THROWS_AS(two_proportion_test(0, 0, 1, 2, 0.05), DegenerateInput);
  CHECK_THROWS_AS(two_proportion_test(3, 2, 1, 2, 0.05), DegenerateInput);
}

TEST_CASE("type-I calibration of the Fisher z-test") {
  const double rate = testing_support::fisher_type_one_rate(1000, 500, 77);
  CHECK(rate >= 0.03);
  CHECK(rate <= 0.07);
}
