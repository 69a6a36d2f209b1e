#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "zeroset/exactprob.hpp"
#include "zeroset/randfield.hpp"

namespace zeroset::mcharness {

enum class Statistic {
  gamma,
  gamma_prime,
  z_crossings,
  delta,           // delta of the N x N grid, i.e. zeros at (2i,2i) with 2i <= N
  delta_fastpath,  // delta_N from aggregated diagonal increments, N diagonal points
  d_antidiag,
  twin_zeros,
  annulus,
  hitting,         // |H_N(alpha, beta)|
};

/// CLI spelling ("gamma", "gamma-prime", "z", "delta", "delta-fast", "antidiag", "twin", "annulus", "hitting").
std::string_view to_string(Statistic s) noexcept;
/// Accepts the CLI spelling and the enumerator name.
std::optional<Statistic> parse_statistic(std::string_view name) noexcept;

struct ExperimentConfig {
  Seed seed;
  Statistic statistic = Statistic::gamma;
  std::vector<std::uint64_t> sizes;
  std::uint64_t replicates = 1;
  unsigned workers = 1;
  double epsilon = 0.5;       // twin_zeros, annulus
  std::uint64_t radius = 100;  // twin_zeros
  double alpha = 0.5;          // hitting
  double beta = 0.25;          // hitting
};

/// Throws ValidationError or CapacityError.
void validate(const ExperimentConfig& config);

struct RawRecord {
  std::uint64_t N = 0;
  std::uint64_t replicate = 0;
  std::int64_t value = 0;
  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct SummaryStats {
  std::uint64_t N = 0;
  std::uint64_t M = 0;
  double mean = 0;
  double variance = 0;  // sample variance, M - 1 denominator (0 when M == 1)
  double std_error = 0;
  double min = 0;
  double max = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RawRecord> raw;  // ordered by (size index, replicate)
  std::vector<SummaryStats> summaries;
};

/// Value of the configured statistic for replicate r at size N, on StreamKey(seed, r).
std::int64_t measure(const ExperimentConfig& config, std::uint64_t N, std::uint64_t replicate);

/// Replicate r runs on worker r mod W; results do not depend on W.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Single-pass (Welford) aggregation in the given order.
SummaryStats summarize(std::uint64_t N, std::span<const std::int64_t> values);

struct FitPoint {
  double N = 0;
  double mean = 0;
  double residual = 0;  // ln(mean) - (intercept + slope ln N)
};

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  std::uint64_t points_used = 0;
  std::vector<FitPoint> points;
  std::vector<double> excluded_nonpositive;  // N values dropped for mean <= 0
};

/// OLS of ln(mean) on ln(N) over points with N >= drop_below and mean > 0.
SlopeFit estimate_exponent(std::span<const std::pair<double, double>> points, double drop_below = 0);

struct ZScore {
  double z = 0;
  bool flagged = false;  // zero standard error with mean != exact
};

ZScore compare_to_exact(const SummaryStats& summary, double exact_mean);

struct DeltaLawRow {
  std::uint64_t N = 0;
  double exact_mean = 0;
  std::optional<double> exact_variance;
  std::optional<double> mc_mean;
  std::optional<double> mc_std_error;
  double ratio = 0;  // exact_mean / ln N
};

struct DeltaLawOptions {
  std::uint64_t replicates = 0;  // 0 skips the Monte Carlo column
  Seed seed;
  unsigned workers = 1;
  std::uint64_t variance_ceiling = exactprob::kDefaultPairCeiling;
};

std::vector<DeltaLawRow> delta_log_law_report(std::span<const std::uint64_t> sizes,
                                              const DeltaLawOptions& options = {});

}  // namespace zeroset::mcharness
