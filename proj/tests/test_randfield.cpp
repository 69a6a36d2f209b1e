#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "zeroset/errors.hpp"
#include "zeroset/randfield.hpp"

using namespace zeroset;

namespace {

// Binomial(count, 1/2) pmf of the signed sum 2k - count, via lgamma.
double signed_pmf(std::uint64_t count, std::int64_t s) {
  const auto k = static_cast<double>((static_cast<std::int64_t>(count) + s) / 2);
  const auto n = static_cast<double>(count);
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1) - n * std::log(2.0));
}

// Pearson statistic over bins with expected count >= 5, tails pooled into their neighbours.
struct ChiSquare {
  double stat = 0;
  int bins = 0;
};

ChiSquare chi_square(const std::map<std::int64_t, int>& observed, std::uint64_t count, int draws) {
  ChiSquare c;
  double exp_acc = 0;
  double obs_acc = 0;
  for (std::int64_t s = -static_cast<std::int64_t>(count); s <= static_cast<std::int64_t>(count); s += 2) {
    exp_acc += draws * signed_pmf(count, s);
    const auto it = observed.find(s);
    obs_acc += it == observed.end() ? 0 : it->second;
    if (exp_acc >= 5) {
      c.stat += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
      ++c.bins;
      exp_acc = 0;
      obs_acc = 0;
    }
  }
  if (exp_acc > 0) c.stat += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
  return c;
}

}  // namespace

TEST_CASE("mix64 is the SplitMix64 finalizer") {
  // First three outputs of SplitMix64 seeded with 0.
  constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  CHECK(mix64(gamma) == 0xE220A8397B1DCDAFULL);
  CHECK(mix64(2 * gamma) == 0x6E789E6AA1B965F4ULL);
  CHECK(mix64(3 * gamma) == 0x06C45D188009454FULL);
}

TEST_CASE("field values are signs, indexed from 1") {
  const RademacherField f(StreamKey{Seed{1}, 0});
  CHECK_THROWS_AS(f.value(0, 1), DomainError);
  CHECK_THROWS_AS(f.value(1, 0), DomainError);
  for (std::uint64_t i = 1; i <= 20; ++i) {
    for (std::uint64_t j = 1; j <= 200; ++j) {
      const int v = f.value(i, j);
      CHECK((v == 1 || v == -1));
    }
  }
}

TEST_CASE("field value is bit (j-1) of the row word") {
  const RademacherField f(StreamKey{Seed{99}, 3});
  for (std::uint64_t i : {1ULL, 2ULL, 77ULL}) {
    for (std::uint64_t j : {1ULL, 2ULL, 64ULL, 65ULL, 130ULL}) {
      const std::uint64_t w = f.row_word(i, (j - 1) / 64);
      const int expected = ((w >> ((j - 1) % 64)) & 1U) ? 1 : -1;
      CHECK(f.value(i, j) == expected);
      CHECK(field_value(f, i, j) == expected);
    }
  }
}

TEST_CASE("fill_row agrees with value for ragged widths") {
  const RademacherField f(StreamKey{Seed{5}, 11});
  for (std::size_t width : {1U, 63U, 64U, 65U, 200U}) {
    std::vector<std::int8_t> row(width);
    f.fill_row(17, row);
    for (std::size_t j = 0; j < width; ++j) CHECK(row[j] == f.value(17, j + 1));
  }
}

TEST_CASE("streams are deterministic and separated") {
  const RademacherField a(StreamKey{Seed{7}, 0});
  const RademacherField b(StreamKey{Seed{7}, 0});
  const RademacherField c(StreamKey{Seed{7}, 1});
  const RademacherField d(StreamKey{Seed{8}, 0});
  int same_c = 0;
  int same_d = 0;
  for (std::uint64_t j = 1; j <= 4096; ++j) {
    CHECK(a.value(3, j) == b.value(3, j));
    same_c += a.value(3, j) == c.value(3, j);
    same_d += a.value(3, j) == d.value(3, j);
  }
  CHECK(same_c > 1800);
  CHECK(same_c < 2300);
  CHECK(same_d > 1800);
  CHECK(same_d < 2300);
  CHECK(detail::stream_base(StreamKey{Seed{7}, 0}) != detail::stream_base(StreamKey{Seed{7}, 1}));
}

TEST_CASE("field bits are balanced") {
  const RademacherField f(StreamKey{Seed{2024}, 0});
  std::int64_t sum = 0;
  const std::uint64_t rows = 256;
  const std::uint64_t cols = 1024;
  for (std::uint64_t i = 1; i <= rows; ++i) {
    for (std::uint64_t j = 1; j <= cols; ++j) sum += f.value(i, j);
  }
  // sd of the sum is sqrt(262144) = 512
  CHECK(std::abs(sum) < 5 * 512);
}

TEST_CASE("signed binomial: domain, parity and range") {
  const StreamKey key{Seed{3}, 4};
  CHECK_THROWS_AS(sample_signed_binomial(key, 0, 0), DomainError);
  for (std::uint64_t count : {1ULL, 2ULL, 7ULL, 1024ULL, 1025ULL, 5000ULL, 80'000ULL}) {
    for (std::uint64_t d = 0; d < 50; ++d) {
      const auto s = sample_signed_binomial(key, d, count);
      CHECK(std::abs(s) <= static_cast<std::int64_t>(count));
      CHECK((s + static_cast<std::int64_t>(count)) % 2 == 0);
      CHECK(s == sample_signed_binomial(key, d, count));
    }
  }
}

TEST_CASE("signed binomial: chi-square against the exact law") {
  // 99.9% quantiles of chi-square for the degrees of freedom seen here stay below bins + 4 sqrt(2 bins) + 10.
  for (std::uint64_t count : {12ULL, 1000ULL, 2000ULL, 40'000ULL}) {
    CAPTURE(count);
    const StreamKey key{Seed{0xC0FFEE}, count};
    const int draws = 20'000;
    std::map<std::int64_t, int> hist;
    for (int d = 0; d < draws; ++d) ++hist[sample_signed_binomial(key, static_cast<std::uint64_t>(d), count)];
    const auto c = chi_square(hist, count, draws);
    CHECK(c.bins > 5);
    CHECK(c.stat < c.bins + 4 * std::sqrt(2.0 * c.bins) + 10);
  }
}

TEST_CASE("signed binomial: distinct draws are not repeated") {
  const StreamKey key{Seed{1}, 0};
  std::set<std::int64_t> seen;
  for (std::uint64_t d = 0; d < 200; ++d) seen.insert(sample_signed_binomial(key, d, 100'000));
  CHECK(seen.size() > 100);
}
