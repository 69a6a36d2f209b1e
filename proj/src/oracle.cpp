#include "zeroset/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace zeroset::oracle {

FullGrid::FullGrid(const SignField& field, std::uint64_t rows, std::uint64_t cols)
    : rows_(rows), cols_(cols), s_((rows + 1) * (cols + 1), 0) {
  const std::uint64_t w = cols + 1;
  for (std::uint64_t i = 1; i <= rows; ++i) {
    for (std::uint64_t j = 1; j <= cols; ++j) {
      s_[i * w + j] = s_[(i - 1) * w + j] + s_[i * w + j - 1] - s_[(i - 1) * w + j - 1] + field.value(i, j);
    }
  }
}

walkstats::StatBundle brute_force_bundle(const SignField& field, std::uint64_t N) {
  const FullGrid g(field, N, N);
  walkstats::StatBundle b;
  b.N = N;
  for (std::uint64_t i = 1; i <= N; ++i) {
    std::uint64_t f = 0;
    for (std::uint64_t j = 1; j <= N; ++j) {
      if (g.at(i, j) == 0) {
        ++b.gamma;
        b.zero_coordinates.emplace_back(i, j);
      }
      if (g.at(i, j) == 1) ++b.gamma_prime;
      if (j < N && g.at(i, j) * g.at(i, j + 1) <= 0) ++f;
    }
    b.row_profiles.push_back(f);
    b.z_crossings += f;
    b.max_f = std::max(b.max_f, f);
  }
  for (std::uint64_t k = 1; 2 * k <= N; ++k) {
    if (g.at(2 * k, 2 * k) == 0) ++b.delta;
  }
  for (std::uint64_t i = 1; i + 1 <= N; ++i) {
    if (g.at(i, N - i) == 0) ++b.d_antidiag;
  }
  return b;
}

std::uint64_t brute_force_twin(const SignField& field, double epsilon, std::uint64_t N, std::uint64_t radius) {
  // Largest wedge column over rows 1 < i < N.
  std::uint64_t jmax = 0;
  for (std::uint64_t i = 2; i < N; ++i) {
    for (std::uint64_t j = 1; static_cast<double>(j) < static_cast<double>(i) / epsilon; ++j) jmax = std::max(jmax, j);
  }
  const FullGrid g(field, N - 1 + radius, jmax + radius);
  const auto r = static_cast<std::int64_t>(radius);

  std::uint64_t twins = 0;
  for (std::uint64_t i = 2; i < N; ++i) {
    for (std::uint64_t j = 1; j <= jmax; ++j) {
      const double di = static_cast<double>(i);
      const double dj = static_cast<double>(j);
      if (!(epsilon * di < dj && dj < di / epsilon)) continue;
      if ((i * j) % 2 != 0 || g.at(i, j) != 0) continue;
      bool found = false;
      for (std::int64_t da = -r; da <= r && !found; ++da) {
        for (std::int64_t db = -r; db <= r && !found; ++db) {
          const std::int64_t dist = std::abs(da) + std::abs(db);
          if (dist == 0 || dist > r) continue;
          const std::int64_t a = static_cast<std::int64_t>(i) + da;
          const std::int64_t b = static_cast<std::int64_t>(j) + db;
          if (a < 1 || b < 1) continue;
          found = g.at(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)) == 0;
        }
      }
      if (found) ++twins;
    }
  }
  return twins;
}

walkstats::AnnulusResult brute_force_annulus(const SignField& field, double epsilon, std::uint64_t N) {
  const FullGrid g(field, N, N);
  const double lo = epsilon * static_cast<double>(N);
  walkstats::AnnulusResult res;
  for (std::uint64_t i = 1; i <= N; ++i) {
    for (std::uint64_t j = 1; j <= N; ++j) {
      if (static_cast<double>(i) >= lo && static_cast<double>(j) >= lo && g.at(i, j) == 0) ++res.count;
    }
  }
  res.nonempty = res.count > 0;
  return res;
}

}  // namespace zeroset::oracle
