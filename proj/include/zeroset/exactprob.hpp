#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace zeroset::exactprob {

inline constexpr std::uint64_t kDefaultExactCeiling = 10'000;
inline constexpr std::uint64_t kDefaultPairCeiling = 4'000;
inline constexpr std::uint64_t kDefaultGammaCeiling = 4'096;

/// (2 pi)^(-1/2), the diagonal log-law constant.
inline constexpr double kDiagonalConstant = 0.398942280401432677939946059934;

/**
 * Return probabilities p(n) = P{W_2n = 0} = C(2n, n) 4^-n of the simple walk.
 *
 * Below the exact ceiling the central binomials are held as exact integers
 * (the denominator 4^n is implicit) and every double is the correctly
 * truncated conversion of the exact rational. Above it, p(n) is evaluated
 * from the log-Gamma ratio series in wallis.hpp. Both paths agree to ~1e-15
 * relative on [20, ceiling].
 *
 * Monotone in n as returned: consecutive values differ by a relative
 * 1/(2n+2), far above rounding for any n below 10^14.
 */
class ReturnProbTable {
 public:
  explicit ReturnProbTable(std::uint64_t exact_ceiling = kDefaultExactCeiling);

  std::uint64_t exact_ceiling() const noexcept { return ceiling_; }

  /// C(2n, n); throws CapacityError above the ceiling.
  const mpz_class& central_binomial(std::uint64_t n) const;

  /// p(n) as a canonical rational; throws CapacityError above the ceiling.
  mpq_class exact(std::uint64_t n) const;

  double value(std::uint64_t n) const noexcept;

  /// Fault injection for verification tooling: perturbs the stored numerator at n.
  void corrupt_entry(std::uint64_t n);

 private:
  std::uint64_t ceiling_;
  std::vector<mpz_class> numerators_;
  std::vector<double> floats_;
};

/// Shared table at the default ceiling, built on first use.
const ReturnProbTable& default_table();

mpq_class p_exact(std::uint64_t n);
double p_float(std::uint64_t n);

/// p(n) - p(n+1) = p(n) / (2n + 2). Throws DomainError for n == 0.
double p_difference(std::uint64_t n);

struct EnvelopeReport {
  std::uint64_t n = 0;
  double leading = 0;   // (pi n)^(-1/2)
  double two_term = 0;  // leading * (1 - 1/(8n))
  double defect = 0;    // p(n) (pi n)^(1/2) - (1 - 1/(8n))
};

EnvelopeReport envelope(std::uint64_t n);

struct MomentReport {
  std::uint64_t N = 0;
  double mean = 0;
  std::optional<double> variance;
  double centered = 0;
};

/// E delta_N = sum_{i<=N} p(2 i^2).
MomentReport delta_mean_exact(std::uint64_t N);

/// P{S(2i,2i) = 0, S(2j,2j) = 0} = p(2i^2) p(2(j^2 - i^2)), strictly i < j.
double pair_prob(std::uint64_t i, std::uint64_t j);

/// Var delta_N from the pair sum; O(N^2).
MomentReport delta_var_exact(std::uint64_t N, std::uint64_t ceiling = kDefaultPairCeiling);

/// E gamma_N over [1,N]^2; P{S(i,j)=0} is p(ij/2) for even ij and 0 otherwise.
/// `centered` holds mean / N.
MomentReport gamma_mean_exact(std::uint64_t N, std::uint64_t ceiling = kDefaultGammaCeiling);

/// E D_N = sum over i in [1, N-1] with i(N-i) even of p(i(N-i)/2).
/// `centered` holds mean - (pi/2)^(1/2), the Riemann-sum limit.
MomentReport antidiag_mean_exact(std::uint64_t N);

/// P(W_2n = x | W_2n >= x) from exact binomial tails; x even, 2 <= x <= 2n.
double cond_hit_prob(std::uint64_t n, std::uint64_t x);

/// min over n <= n_max and even x in [2, 2n] of sqrt(n) * cond_hit_prob(n, x).
double hit_constant_estimate(std::uint64_t n_max = 200);

}  // namespace zeroset::exactprob
