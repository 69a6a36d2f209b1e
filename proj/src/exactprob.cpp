#include "zeroset/exactprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zeroset/errors.hpp"
#include "zeroset/wallis.hpp"

namespace zeroset::exactprob {
namespace {

// a / b for positive integers, accurate to a couple of ulps whatever their size.
double ratio_to_double(const mpz_class& a, const mpz_class& b) {
  long ea = 0;
  long eb = 0;
  const double da = mpz_get_d_2exp(&ea, a.get_mpz_t());
  const double db = mpz_get_d_2exp(&eb, b.get_mpz_t());
  return std::ldexp(da / db, static_cast<int>(ea - eb));
}

}  // namespace

ReturnProbTable::ReturnProbTable(std::uint64_t exact_ceiling) : ceiling_(exact_ceiling) {
  numerators_.reserve(ceiling_ + 1);
  floats_.reserve(ceiling_ + 1);
  mpz_class c = 1;
  for (std::uint64_t n = 0; n <= ceiling_; ++n) {
    numerators_.push_back(c);
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, c.get_mpz_t());
    floats_.push_back(std::ldexp(mant, static_cast<int>(e - 2 * static_cast<long>(n))));
    // C(2n+2, n+1) = C(2n, n) * 2(2n+1) / (n+1)
    c *= 2 * (2 * n + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), n + 1);
  }
}

const mpz_class& ReturnProbTable::central_binomial(std::uint64_t n) const {
  if (n > ceiling_) throw CapacityError("p_exact: n above exact ceiling, use p_float", ceiling_);
  return numerators_[n];
}

mpq_class ReturnProbTable::exact(std::uint64_t n) const {
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(2 * n);
  mpq_class q(central_binomial(n), den);
  q.canonicalize();
  return q;
}

double ReturnProbTable::value(std::uint64_t n) const noexcept {
  if (n <= ceiling_) return floats_[n];
  return wallis::return_prob(n);
}

void ReturnProbTable::corrupt_entry(std::uint64_t n) {
  if (n > ceiling_) throw CapacityError("corrupt_entry: n above exact ceiling", ceiling_);
  numerators_[n] += 1;
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, numerators_[n].get_mpz_t());
  floats_[n] = std::ldexp(mant, static_cast<int>(e - 2 * static_cast<long>(n)));
}

const ReturnProbTable& default_table() {
  static const ReturnProbTable table;
  return table;
}

mpq_class p_exact(std::uint64_t n) { return default_table().exact(n); }

double p_float(std::uint64_t n) { return default_table().value(n); }

double p_difference(std::uint64_t n) {
  if (n == 0) throw DomainError("p_difference: n must be >= 1");
  return p_float(n) / static_cast<double>(2 * n + 2);
}

EnvelopeReport envelope(std::uint64_t n) {
  if (n == 0) throw DomainError("envelope: n must be >= 1");
  const long double nd = static_cast<long double>(n);
  const long double root = std::sqrt(std::numbers::pi_v<long double> * nd);
  EnvelopeReport r;
  r.n = n;
  r.leading = static_cast<double>(1.0L / root);
  r.two_term = static_cast<double>((1.0L - 1.0L / (8.0L * nd)) / root);
  if (n <= default_table().exact_ceiling()) {
    r.defect = static_cast<double>(static_cast<long double>(p_float(n)) * root - 1.0L + 1.0L / (8.0L * nd));
  } else {
    // p sqrt(pi n) = exp(s); expm1 keeps the small defect accurate.
    r.defect = std::expm1(wallis::log_correction(n)) + 1.0 / (8.0 * static_cast<double>(n));
  }
  return r;
}

MomentReport delta_mean_exact(std::uint64_t N) {
  if (N == 0) throw DomainError("delta_mean_exact: N must be >= 1");
  long double sum = 0;
  for (std::uint64_t i = 1; i <= N; ++i) sum += p_float(2 * i * i);
  MomentReport r;
  r.N = N;
  r.mean = static_cast<double>(sum);
  r.centered = static_cast<double>(sum - kDiagonalConstant * std::log(static_cast<long double>(N)));
  return r;
}

double pair_prob(std::uint64_t i, std::uint64_t j) {
  if (i == 0 || i >= j) throw DomainError("pair_prob: requires 1 <= i < j");
  return p_float(2 * i * i) * p_float(2 * (j * j - i * i));
}

MomentReport delta_var_exact(std::uint64_t N, std::uint64_t ceiling) {
  if (N == 0) throw DomainError("delta_var_exact: N must be >= 1");
  if (N > ceiling) throw CapacityError("delta_var_exact: N above pair ceiling", ceiling);
  const MomentReport m = delta_mean_exact(N);
  long double pairs = 0;
  for (std::uint64_t i = 1; i < N; ++i) {
    const long double pi = p_float(2 * i * i);
    long double row = 0;
    for (std::uint64_t j = i + 1; j <= N; ++j) row += p_float(2 * (j * j - i * i));
    pairs += pi * row;
  }
  const long double mean = m.mean;
  const long double var = std::max(0.0L, mean + 2 * pairs - mean * mean);
  MomentReport r = m;
  r.variance = static_cast<double>(var);
  r.centered = static_cast<double>(var - kDiagonalConstant * std::log(static_cast<long double>(N)));
  return r;
}

MomentReport gamma_mean_exact(std::uint64_t N, std::uint64_t ceiling) {
  if (N == 0) throw DomainError("gamma_mean_exact: N must be >= 1");
  if (N > ceiling) throw CapacityError("gamma_mean_exact: N above ceiling", ceiling);
  long double sum = 0;
  for (std::uint64_t i = 1; i <= N; ++i) {
    long double row = 0;
    for (std::uint64_t j = 1; j <= N; ++j) {
      const std::uint64_t ij = i * j;
      if (ij % 2 == 0) row += p_float(ij / 2);
    }
    sum += row;
  }
  MomentReport r;
  r.N = N;
  r.mean = static_cast<double>(sum);
  r.centered = r.mean / static_cast<double>(N);
  return r;
}

MomentReport antidiag_mean_exact(std::uint64_t N) {
  if (N < 2) throw DomainError("antidiag_mean_exact: N must be >= 2");
  long double sum = 0;
  for (std::uint64_t i = 1; i < N; ++i) {
    const std::uint64_t cells = i * (N - i);
    if (cells % 2 == 0) sum += p_float(cells / 2);
  }
  MomentReport r;
  r.N = N;
  r.mean = static_cast<double>(sum);
  r.centered = r.mean - std::sqrt(std::numbers::pi / 2.0);
  return r;
}

double cond_hit_prob(std::uint64_t n, std::uint64_t x) {
  if (n == 0) throw DomainError("cond_hit_prob: n must be >= 1");
  if (x == 0 || x % 2 != 0 || x > 2 * n) throw DomainError("cond_hit_prob: x must be even with 2 <= x <= 2n");
  const std::uint64_t k0 = n + x / 2;
  mpz_class at;
  mpz_bin_uiui(at.get_mpz_t(), 2 * n, k0);
  mpz_class tail = 0;
  mpz_class term;
  for (std::uint64_t k = k0; k <= 2 * n; ++k) {
    mpz_bin_uiui(term.get_mpz_t(), 2 * n, k);
    tail += term;
  }
  return ratio_to_double(at, tail);
}

double hit_constant_estimate(std::uint64_t n_max) {
  if (n_max == 0) throw DomainError("hit_constant_estimate: n_max must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  std::vector<mpz_class> row;
  std::vector<mpz_class> suffix;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::uint64_t m = 2 * n;
    row.assign(m + 1, mpz_class(1));
    for (std::uint64_t k = 1; k <= m; ++k) {
      row[k] = row[k - 1] * (m - k + 1);
      mpz_divexact_ui(row[k].get_mpz_t(), row[k].get_mpz_t(), k);
    }
    suffix.assign(m + 2, mpz_class(0));
    for (std::uint64_t k = m + 1; k-- > 0;) suffix[k] = suffix[k + 1] + row[k];
    const double root = std::sqrt(static_cast<double>(n));
    for (std::uint64_t x = 2; x <= m; x += 2) {
      const std::uint64_t k0 = n + x / 2;
      best = std::min(best, root * ratio_to_double(row[k0], suffix[k0]));
    }
  }
  return best;
}

}  // namespace zeroset::exactprob
