#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>

#include "teleo/dataset.hpp"

namespace teleo {

inline constexpr double kDefaultAlpha = 0.05;

/// |r| is capped here before atanh so near-deterministic relations keep a
/// finite statistic (their p-value underflows to 0).
inline constexpr double kCorrelationClamp = 1.0 - 1e-12;

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  double alpha = kDefaultAlpha;
  bool dependent = false;  // p_value < alpha
};

double std_normal_cdf(double z);

/// Throws DegenerateInput for constant columns or fewer than two rows.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Sample partial correlation of x and y given `given`, by the recursive
/// formula over the Pearson correlation matrix. Throws DegenerateInput for
/// constant columns, n <= |given| + 3, or when x or y is a deterministic
/// function of the conditioning set.
double partial_correlation(const Dataset& data, const std::string& x, const std::string& y,
                           const std::set<std::string>& given);

/// z = atanh(r) * sqrt(n - cond_size - 3), two-sided p = 2 * (1 - Phi(|z|)).
TestResult fisher_z_test(double r, std::size_t n, std::size_t cond_size, double alpha = kDefaultAlpha);

/// Pooled two-proportion z-test, two-sided. p = 1 when the pooled proportion is 0 or 1.
TestResult two_proportion_test(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2,
                               double alpha = kDefaultAlpha);

}  // namespace teleo
