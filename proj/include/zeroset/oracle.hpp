#pragma once

#include <cstdint>
#include <vector>

#include "zeroset/randfield.hpp"
#include "zeroset/walkstats.hpp"

namespace zeroset::oracle {

/**
 * Brute-force reference for the streaming counters.
 *
 * Materializes the whole box from per-cell field values using the 2-D
 * recurrence S(i,j) = S(i-1,j) + S(i,j-1) - S(i-1,j-1) + X(i,j) and counts
 * everything by direct definition. Shares no code with walkstats beyond the
 * field itself. Only meant for small boxes.
 */
class FullGrid {
 public:
  FullGrid(const SignField& field, std::uint64_t rows, std::uint64_t cols);

  /// S(i, j) for 0 <= i <= rows, 0 <= j <= cols; zero on the axes.
  std::int64_t at(std::uint64_t i, std::uint64_t j) const { return s_[i * (cols_ + 1) + j]; }
  std::uint64_t rows() const noexcept { return rows_; }
  std::uint64_t cols() const noexcept { return cols_; }

 private:
  std::uint64_t rows_;
  std::uint64_t cols_;
  std::vector<std::int64_t> s_;
};

walkstats::StatBundle brute_force_bundle(const SignField& field, std::uint64_t N);
std::uint64_t brute_force_twin(const SignField& field, double epsilon, std::uint64_t N, std::uint64_t radius);
walkstats::AnnulusResult brute_force_annulus(const SignField& field, double epsilon, std::uint64_t N);

}  // namespace zeroset::oracle
