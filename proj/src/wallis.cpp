#include "zeroset/wallis.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace zeroset::wallis {
namespace {

// ln Gamma(n + 1/2) - ln Gamma(n + 1) + (1/2) ln n, expanded in odd powers of 1/n.
// Coefficient m is -(2 - 2^(1-2m)) B_{2m} / ((2m-1)(2m)).
constexpr std::array<double, 7> kCoefficients = {
    -1.0 / 8.0,
    1.0 / 192.0,
    -1.0 / 640.0,
    17.0 / 14336.0,
    -31.0 / 18432.0,
    691.0 / 180224.0,
    -114681.0 / 8945664.0,
};

constexpr std::uint64_t kSeriesThreshold = 20;

}  // namespace

double log_correction(std::uint64_t n) noexcept {
  const double x = 1.0 / static_cast<double>(n);
  const double x2 = x * x;
  double acc = 0.0;
  for (auto it = kCoefficients.rbegin(); it != kCoefficients.rend(); ++it) {
    acc = acc * x2 + *it;
  }
  return acc * x;
}

double return_prob(std::uint64_t n) noexcept {
  if (n < kSeriesThreshold) {
    double p = 1.0;
    for (std::uint64_t k = 0; k < n; ++k) {
      p *= static_cast<double>(2 * k + 1) / static_cast<double>(2 * k + 2);
    }
    return p;
  }
  const double nd = static_cast<double>(n);
  return std::exp(log_correction(n)) / std::sqrt(std::numbers::pi * nd);
}

}  // namespace zeroset::wallis
