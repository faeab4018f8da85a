#include "teleo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "teleo/error.hpp"

namespace teleo {

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DegenerateInput("correlation needs columns of equal length");
  const std::size_t n = a.size();
  if (n < 2) throw DegenerateInput("correlation needs at least two rows");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw DegenerateInput("correlation of a constant column");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

namespace {

class PartialCorrelation {
 public:
  explicit PartialCorrelation(std::vector<std::vector<double>> corr) : corr_(std::move(corr)) {}

  // Correlation of i and j given the variables whose bits are set in `mask`.
  double operator()(std::size_t i, std::size_t j, unsigned mask) {
    if (mask == 0) return corr_[i][j];
    const auto key = std::make_tuple(std::min(i, j), std::max(i, j), mask);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    unsigned k = 0;
    while (!(mask & (1u << k))) ++k;
    const unsigned rest = mask & ~(1u << k);
    const double rij = (*this)(i, j, rest);
    const double rik = (*this)(i, k, rest);
    const double rjk = (*this)(j, k, rest);
    const double denom = (1.0 - rik * rik) * (1.0 - rjk * rjk);
    if (!(denom > 0.0)) throw DegenerateInput("variable is a deterministic function of the conditioning set");
    const double r = std::clamp((rij - rik * rjk) / std::sqrt(denom), -1.0, 1.0);
    memo_.emplace(key, r);
    return r;
  }

 private:
  std::vector<std::vector<double>> corr_;
  std::map<std::tuple<std::size_t, std::size_t, unsigned>, double> memo_;
};

}  // namespace

double partial_correlation(const Dataset& data, const std::string& x, const std::string& y,
                           const std::set<std::string>& given) {
  if (x == y || given.count(x) || given.count(y)) {
    throw DegenerateInput("partial correlation needs distinct x, y outside the conditioning set");
  }
  if (given.size() > 16) throw DegenerateInput("conditioning set too large");
  if (data.rows() <= given.size() + 3) {
    throw DegenerateInput("partial correlation needs more than " + std::to_string(given.size() + 3) + " rows, got " +
                          std::to_string(data.rows()));
  }
  // Index layout: conditioning variables 0..k-1, then x, then y.
  std::vector<std::span<const double>> cols;
  for (const auto& z : given) cols.push_back(data.column(z));
  cols.push_back(data.column(x));
  cols.push_back(data.column(y));

  const std::size_t m = cols.size();
  std::vector<std::vector<double>> corr(m, std::vector<double>(m, 1.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) corr[i][j] = corr[j][i] = pearson_correlation(cols[i], cols[j]);
  }
  const unsigned mask = given.empty() ? 0u : (1u << given.size()) - 1u;
  return PartialCorrelation(std::move(corr))(m - 2, m - 1, mask);
}

TestResult fisher_z_test(double r, std::size_t n, std::size_t cond_size, double alpha) {
  if (!(std::fabs(r) <= 1.0)) throw DegenerateInput("correlation must lie in [-1, 1]");
  if (n <= cond_size + 3) {
    throw DegenerateInput("Fisher z-test needs n > " + std::to_string(cond_size + 3) + ", got " + std::to_string(n));
  }
  const double clamped = std::clamp(r, -kCorrelationClamp, kCorrelationClamp);
  const double z = std::atanh(clamped) * std::sqrt(static_cast<double>(n - cond_size - 3));
  // 2 * (1 - Phi(|z|)) written as erfc to keep precision in the tail.
  const double p = std::erfc(std::fabs(z) / std::numbers::sqrt2);
  return {z, std::clamp(p, 0.0, 1.0), n, alpha, p < alpha};
}

TestResult two_proportion_test(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2, double alpha) {
  if (n1 == 0 || n2 == 0) throw DegenerateInput("two-proportion test needs nonzero sample sizes");
  if (k1 > n1 || k2 > n2) throw DegenerateInput("success count exceeds sample size");
  const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  const double var = pooled * (1.0 - pooled) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
  if (var <= 0.0) return {0.0, 1.0, n1 + n2, alpha, false};
  const double z = (p1 - p2) / std::sqrt(var);
  const double p = std::clamp(std::erfc(std::fabs(z) / std::numbers::sqrt2), 0.0, 1.0);
  return {z, p, n1 + n2, alpha, p < alpha};
}

}  // namespace teleo
