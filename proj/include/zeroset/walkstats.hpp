#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "zeroset/randfield.hpp"

namespace zeroset::walkstats {

inline constexpr std::uint64_t kSweepCeiling = std::uint64_t{1} << 15;

/**
 * Row-by-row evaluation of S(i, j) over columns 1..cols.
 *
 * Holds one row of column partial sums: after the i-th call to next_row(),
 * entry j-1 is S(i, j) = S(i-1, j) + sum_{k<=j} X(i, k). Memory is O(cols).
 */
class GridSweeper {
 public:
  GridSweeper(const SignField& field, std::uint64_t cols);

  /// Advances to the next row and returns S(i, 1..cols).
  std::span<const std::int64_t> next_row();

  std::uint64_t row_index() const noexcept { return row_; }

 private:
  const SignField& field_;
  std::uint64_t row_ = 0;
  std::vector<std::int8_t> signs_;
  std::vector<std::int64_t> sums_;
};

/// Vertical crossing predicate S(i,j) S(i,j+1) <= 0, without forming the product.
constexpr bool is_crossing(std::int64_t a, std::int64_t b) noexcept {
  return a == 0 || b == 0 || ((a > 0) != (b > 0));
}

struct CrossingRecord {
  /// Columns rho_1 < rho_2 < ... (1-based) where the row crosses or touches zero.
  std::vector<std::uint64_t> times;
  /// U(i; l): whether crossing l touches an exact zero.
  std::vector<bool> zero_flags;

  /// f(i; t): number of crossing times <= t.
  std::uint64_t count_up_to(std::uint64_t t) const;
  std::uint64_t touches() const;
};

/// Crossing times of one row, row_values[j-1] = S(i, j). Throws DomainError on empty input.
CrossingRecord upcrossing_times(std::span<const std::int64_t> row_values);

struct StatBundle {
  std::uint64_t N = 0;
  std::uint64_t gamma = 0;        // zeros in [1,N]^2
  std::uint64_t gamma_prime = 0;  // cells with S = 1 in [1,N]^2
  std::uint64_t z_crossings = 0;  // crossings with j in [1, N-1]
  std::uint64_t delta = 0;        // zeros at (2i,2i), 2i <= N
  std::uint64_t d_antidiag = 0;   // zeros at (i, N-i), i in [1, N-1]
  std::vector<std::uint64_t> row_profiles;  // f(i; N), i = 1..N
  std::uint64_t max_f = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> zero_coordinates;  // filled on request
};

using RowObserver = std::function<void(std::uint64_t row, std::span<const std::int64_t> values)>;

/// One pass over the N x N box. The observer, if set, sees every completed row.
StatBundle sweep_grid(const SignField& field, std::uint64_t N, bool collect_coords = false,
                      const RowObserver& observer = {}, std::uint64_t ceiling = kSweepCeiling);

/**
 * Diagonal zero count from aggregated increments: the running sum gains a
 * sum of 8i-4 fresh signs at step i, which is the law of S(2i,2i) - S(2i-2,2i-2).
 * Same distribution as delta_N of a 2N x 2N grid; not pathwise equal to
 * sweep_grid on the same key.
 */
std::uint64_t diag_zero_count(const StreamKey& key, std::uint64_t N);

/// { i <= N^(1-alpha) : f(i;N) > N^(1/2 - beta) }, alpha in (0,1), beta in (0,1/2).
std::vector<std::uint64_t> hitting_set(const StatBundle& bundle, double alpha, double beta);

/**
 * Even zeros (i, j) inside the wedge eps*i < j < i/eps, 1 < i < N, that have
 * another zero (a, b), a, b >= 1, at L1 distance in (0, radius]. The wedge
 * extends past column N, so the sweep covers rows up to N-1+radius and the
 * columns the wedge reaches plus radius. Zero-prefix rows are kept in a ring
 * of 2*radius+1 rows.
 */
std::uint64_t twin_zero_count(const SignField& field, double epsilon, std::uint64_t N, std::uint64_t radius);

struct AnnulusResult {
  bool nonempty = false;
  std::uint64_t count = 0;
};

/// Zeros of S in [eps N, N]^2.
AnnulusResult annulus_zero_check(const SignField& field, double epsilon, std::uint64_t N);

namespace detail {
/// Inclusive column range of the twin-zero wedge at row i; empty when first > second.
std::pair<std::uint64_t, std::uint64_t> wedge_columns(double epsilon, std::uint64_t i);
std::uint64_t annulus_low(double epsilon, std::uint64_t N);
}  // namespace detail

}  // namespace zeroset::walkstats
