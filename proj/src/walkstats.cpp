#include "zeroset/walkstats.hpp"

#include <algorithm>
#include <cmath>

#include "zeroset/errors.hpp"

namespace zeroset::walkstats {
namespace {

constexpr std::uint64_t kTwinRingCeiling = std::uint64_t{1} << 25;

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

}  // namespace

GridSweeper::GridSweeper(const SignField& field, std::uint64_t cols)
    : field_(field), signs_(cols), sums_(cols, 0) {}

std::span<const std::int64_t> GridSweeper::next_row() {
  ++row_;
  field_.fill_row(row_, signs_);
  std::int64_t prefix = 0;
  const std::size_t n = sums_.size();
  for (std::size_t k = 0; k < n; ++k) {
    prefix += signs_[k];
    sums_[k] += prefix;
  }
  return sums_;
}

std::uint64_t CrossingRecord::count_up_to(std::uint64_t t) const {
  return static_cast<std::uint64_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

std::uint64_t CrossingRecord::touches() const {
  return static_cast<std::uint64_t>(std::count(zero_flags.begin(), zero_flags.end(), true));
}

CrossingRecord upcrossing_times(std::span<const std::int64_t> row_values) {
  if (row_values.empty()) throw DomainError("upcrossing_times: empty row");
  CrossingRecord rec;
  for (std::size_t k = 0; k + 1 < row_values.size(); ++k) {
    const std::int64_t a = row_values[k];
    const std::int64_t b = row_values[k + 1];
    if (is_crossing(a, b)) {
      rec.times.push_back(k + 1);
      rec.zero_flags.push_back(a == 0 || b == 0);
    }
  }
  return rec;
}

StatBundle sweep_grid(const SignField& field, std::uint64_t N, bool collect_coords, const RowObserver& observer,
                      std::uint64_t ceiling) {
  if (N == 0) throw DomainError("sweep_grid: N must be >= 1");
  if (N > ceiling) throw CapacityError("sweep_grid: N above memory-safe ceiling", ceiling);

  StatBundle b;
  b.N = N;
  b.row_profiles.assign(N, 0);
  GridSweeper sweeper(field, N);
  for (std::uint64_t i = 1; i <= N; ++i) {
    const auto row = sweeper.next_row();
    std::uint64_t f = 0;
    for (std::uint64_t k = 0; k < N; ++k) {
      const std::int64_t v = row[k];
      if (v == 0) {
        ++b.gamma;
        if (collect_coords) b.zero_coordinates.emplace_back(i, k + 1);
      } else if (v == 1) {
        ++b.gamma_prime;
      }
      if (k + 1 < N && is_crossing(v, row[k + 1])) ++f;
    }
    b.row_profiles[i - 1] = f;
    b.z_crossings += f;
    b.max_f = std::max(b.max_f, f);
    if (i % 2 == 0 && row[i - 1] == 0) ++b.delta;
    if (i < N && row[N - i - 1] == 0) ++b.d_antidiag;
    if (observer) observer(i, row);
  }
  return b;
}

std::uint64_t diag_zero_count(const StreamKey& key, std::uint64_t N) {
  std::int64_t sum = 0;
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 1; i <= N; ++i) {
    sum += sample_signed_binomial(key, i, 8 * i - 4);
    if (sum == 0) ++zeros;
  }
  return zeros;
}

std::vector<std::uint64_t> hitting_set(const StatBundle& bundle, double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hitting_set: alpha must lie in (0, 1)");
  if (!(beta > 0.0 && beta < 0.5)) throw DomainError("hitting_set: beta must lie in (0, 1/2)");
  if (bundle.row_profiles.size() != bundle.N) throw DomainError("hitting_set: bundle lacks row profiles");
  const double n = static_cast<double>(bundle.N);
  const double row_limit = std::pow(n, 1.0 - alpha);
  const double level = std::pow(n, 0.5 - beta);
  std::vector<std::uint64_t> rows;
  for (std::uint64_t i = 1; i <= bundle.N && static_cast<double>(i) <= row_limit; ++i) {
    if (static_cast<double>(bundle.row_profiles[i - 1]) > level) rows.push_back(i);
  }
  return rows;
}

namespace detail {

std::pair<std::uint64_t, std::uint64_t> wedge_columns(double epsilon, std::uint64_t i) {
  const double lo = epsilon * static_cast<double>(i);
  const double hi = static_cast<double>(i) / epsilon;
  const auto first = static_cast<std::uint64_t>(std::floor(lo)) + 1;
  const auto last_plus = static_cast<std::uint64_t>(std::ceil(hi));
  return {first, last_plus == 0 ? 0 : last_plus - 1};
}

std::uint64_t annulus_low(double epsilon, std::uint64_t N) {
  const auto lo = static_cast<std::uint64_t>(std::ceil(epsilon * static_cast<double>(N)));
  return std::max<std::uint64_t>(lo, 1);
}

}  // namespace detail

std::uint64_t twin_zero_count(const SignField& field, double epsilon, std::uint64_t N, std::uint64_t radius) {
  check_epsilon(epsilon);
  if (N < 2) throw DomainError("twin_zero_count: N must be >= 2");
  if (radius == 0) throw DomainError("twin_zero_count: radius must be >= 1");
  if (N > kSweepCeiling) throw CapacityError("twin_zero_count: N above ceiling", kSweepCeiling);
  if (N == 2) return 0;  // wedge rows are 1 < i < N

  const std::uint64_t rows = N - 1 + radius;
  const std::uint64_t cols = detail::wedge_columns(epsilon, N - 1).second + radius;
  const std::uint64_t ring = 2 * radius + 1;
  if (ring * (cols + 1) > kTwinRingCeiling) {
    throw CapacityError("twin_zero_count: banded zero map too large", kTwinRingCeiling);
  }

  // prefix[r % ring][c] = zeros of row r in columns 1..c
  std::vector<std::vector<std::uint32_t>> prefix(ring, std::vector<std::uint32_t>(cols + 1, 0));
  auto zeros_in = [&](std::uint64_t row, std::uint64_t lo, std::uint64_t hi) {
    const auto& p = prefix[row % ring];
    return p[hi] - p[lo - 1];
  };

  std::uint64_t twins = 0;
  GridSweeper sweeper(field, cols);
  for (std::uint64_t r = 1; r <= rows; ++r) {
    const auto values = sweeper.next_row();
    auto& p = prefix[r % ring];
    for (std::uint64_t c = 1; c <= cols; ++c) p[c] = p[c - 1] + (values[c - 1] == 0 ? 1U : 0U);

    if (r <= radius) continue;
    const std::uint64_t i = r - radius;
    if (i < 2 || i >= N) continue;

    const auto [jlo, jhi] = detail::wedge_columns(epsilon, i);
    for (std::uint64_t j = jlo; j <= jhi; ++j) {
      if ((i * j) % 2 != 0 || zeros_in(i, j, j) == 0) continue;
      bool twin = false;
      for (std::uint64_t d = 0; d <= radius && !twin; ++d) {
        const std::uint64_t w = radius - d;
        const std::uint64_t lo = j > w ? j - w : 1;
        const std::uint64_t hi = std::min(cols, j + w);
        if (d == 0) {
          twin = zeros_in(i, lo, hi) > 1;
        } else {
          twin = zeros_in(i + d, lo, hi) > 0 || (i > d && zeros_in(i - d, lo, hi) > 0);
        }
      }
      if (twin) ++twins;
    }
  }
  return twins;
}

AnnulusResult annulus_zero_check(const SignField& field, double epsilon, std::uint64_t N) {
  check_epsilon(epsilon);
  if (N == 0) throw DomainError("annulus_zero_check: N must be >= 1");
  if (N > kSweepCeiling) throw CapacityError("annulus_zero_check: N above ceiling", kSweepCeiling);
  const std::uint64_t lo = detail::annulus_low(epsilon, N);
  AnnulusResult res;
  GridSweeper sweeper(field, N);
  for (std::uint64_t i = 1; i <= N; ++i) {
    const auto row = sweeper.next_row();
    if (i < lo) continue;
    for (std::uint64_t j = lo; j <= N; ++j) {
      if (row[j - 1] == 0) ++res.count;
    }
  }
  res.nonempty = res.count > 0;
  return res;
}

}  // namespace zeroset::walkstats
