#include "zeroset/mcharness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "zeroset/errors.hpp"
#include "zeroset/walkstats.hpp"

namespace zeroset::mcharness {
namespace {

struct StatName {
  Statistic stat;
  std::string_view cli;
  std::string_view enumerator;
};

constexpr std::array<StatName, 9> kNames = {{
    {Statistic::gamma, "gamma", "gamma"},
    {Statistic::gamma_prime, "gamma-prime", "gamma_prime"},
    {Statistic::z_crossings, "z", "z_crossings"},
    {Statistic::delta, "delta", "delta"},
    {Statistic::delta_fastpath, "delta-fast", "delta_fastpath"},
    {Statistic::d_antidiag, "antidiag", "d_antidiag"},
    {Statistic::twin_zeros, "twin", "twin_zeros"},
    {Statistic::annulus, "annulus", "annulus"},
    {Statistic::hitting, "hitting", "hitting"},
}};

bool uses_grid(Statistic s) {
  return s != Statistic::delta_fastpath;
}

}  // namespace

std::string_view to_string(Statistic s) noexcept {
  for (const auto& n : kNames) {
    if (n.stat == s) return n.cli;
  }
  return "unknown";
}

std::optional<Statistic> parse_statistic(std::string_view name) noexcept {
  for (const auto& n : kNames) {
    if (n.cli == name || n.enumerator == name) return n.stat;
  }
  return std::nullopt;
}

void validate(const ExperimentConfig& c) {
  if (c.sizes.empty()) throw ValidationError("sizes must be nonempty");
  if (c.replicates == 0) throw ValidationError("replicates must be >= 1");
  if (c.workers == 0) throw ValidationError("workers must be >= 1");
  for (std::size_t k = 0; k < c.sizes.size(); ++k) {
    if (c.sizes[k] == 0) throw ValidationError("sizes must be positive");
    if (k > 0 && c.sizes[k] <= c.sizes[k - 1]) throw ValidationError("sizes must be strictly increasing");
  }
  switch (c.statistic) {
    case Statistic::twin_zeros:
      if (c.sizes.front() < 2) throw ValidationError("twin zeros need N >= 2");
      if (c.radius == 0) throw ValidationError("radius must be >= 1");
      [[fallthrough]];
    case Statistic::annulus:
      if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
      break;
    case Statistic::hitting:
      if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
      if (!(c.beta > 0.0 && c.beta < 0.5)) throw ValidationError("beta must lie in (0, 1/2)");
      break;
    default:
      break;
  }
  if (uses_grid(c.statistic) && c.sizes.back() > walkstats::kSweepCeiling) {
    throw CapacityError("grid size above sweep ceiling", walkstats::kSweepCeiling);
  }
}

std::int64_t measure(const ExperimentConfig& c, std::uint64_t N, std::uint64_t replicate) {
  const StreamKey key{c.seed, replicate};
  if (c.statistic == Statistic::delta_fastpath) {
    return static_cast<std::int64_t>(walkstats::diag_zero_count(key, N));
  }
  const RademacherField field(key);
  switch (c.statistic) {
    case Statistic::twin_zeros:
      return static_cast<std::int64_t>(walkstats::twin_zero_count(field, c.epsilon, N, c.radius));
    case Statistic::annulus:
      return static_cast<std::int64_t>(walkstats::annulus_zero_check(field, c.epsilon, N).count);
    default:
      break;
  }
  const walkstats::StatBundle b = walkstats::sweep_grid(field, N);
  switch (c.statistic) {
    case Statistic::gamma: return static_cast<std::int64_t>(b.gamma);
    case Statistic::gamma_prime: return static_cast<std::int64_t>(b.gamma_prime);
    case Statistic::z_crossings: return static_cast<std::int64_t>(b.z_crossings);
    case Statistic::delta: return static_cast<std::int64_t>(b.delta);
    case Statistic::d_antidiag: return static_cast<std::int64_t>(b.d_antidiag);
    case Statistic::hitting: return static_cast<std::int64_t>(walkstats::hitting_set(b, c.alpha, c.beta).size());
    default: break;
  }
  throw ValidationError("unhandled statistic");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::size_t sizes = config.sizes.size();
  const std::uint64_t reps = config.replicates;
  std::vector<std::int64_t> values(sizes * reps);

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(config.workers, reps));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t s = 0; s < sizes; ++s) {
        for (std::uint64_t r = w; r < reps; r += workers) {
          values[s * reps + r] = measure(config, config.sizes[s], r);
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  result.config = config;
  result.raw.reserve(values.size());
  for (std::size_t s = 0; s < sizes; ++s) {
    for (std::uint64_t r = 0; r < reps; ++r) result.raw.push_back({config.sizes[s], r, values[s * reps + r]});
    result.summaries.push_back(
        summarize(config.sizes[s], std::span<const std::int64_t>(values).subspan(s * reps, reps)));
  }
  return result;
}

SummaryStats summarize(std::uint64_t N, std::span<const std::int64_t> values) {
  if (values.empty()) throw ValidationError("summarize: no values");
  SummaryStats s;
  s.N = N;
  s.M = values.size();
  double mean = 0;
  double m2 = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::uint64_t k = 0;
  for (const std::int64_t v : values) {
    const double x = static_cast<double>(v);
    ++k;
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  s.mean = mean;
  s.variance = s.M > 1 ? std::max(0.0, m2 / static_cast<double>(s.M - 1)) : 0.0;
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.M));
  s.min = lo;
  s.max = hi;
  return s;
}

SlopeFit estimate_exponent(std::span<const std::pair<double, double>> points, double drop_below) {
  SlopeFit fit;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [n, mean] : points) {
    if (n < drop_below) continue;
    if (!(mean > 0.0) || !(n > 0.0)) {
      fit.excluded_nonpositive.push_back(n);
      continue;
    }
    logs.emplace_back(std::log(n), std::log(mean));
    fit.points.push_back({n, mean, 0.0});
  }
  if (logs.size() < 2) throw ValidationError("estimate_exponent: fewer than 2 usable points");

  const double k = static_cast<double>(logs.size());
  double mx = 0;
  double my = 0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= k;
  my /= k;
  double sxx = 0;
  double sxy = 0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0.0) throw ValidationError("estimate_exponent: all N equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double r = logs[i].second - (fit.intercept + fit.slope * logs[i].first);
    fit.points[i].residual = r;
    sse += r * r;
  }
  fit.points_used = logs.size();
  fit.stderr_slope = logs.size() > 2 ? std::sqrt(sse / (k - 2.0) / sxx) : 0.0;
  return fit;
}

ZScore compare_to_exact(const SummaryStats& summary, double exact_mean) {
  if (summary.M < 2) throw ValidationError("compare_to_exact: need M >= 2");
  const double diff = summary.mean - exact_mean;
  if (summary.std_error > 0.0) return {diff / summary.std_error, false};
  if (diff == 0.0) return {0.0, false};
  return {std::copysign(std::numeric_limits<double>::infinity(), diff), true};
}

std::vector<DeltaLawRow> delta_log_law_report(std::span<const std::uint64_t> sizes, const DeltaLawOptions& options) {
  std::vector<DeltaLawRow> rows;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 2) throw ValidationError("delta_log_law_report: N must be >= 2");
    if (k > 0 && sizes[k] <= sizes[k - 1]) throw ValidationError("delta_log_law_report: sizes must increase");
  }
  for (const std::uint64_t N : sizes) {
    DeltaLawRow row;
    row.N = N;
    if (N <= options.variance_ceiling) {
      const auto m = exactprob::delta_var_exact(N, options.variance_ceiling);
      row.exact_mean = m.mean;
      row.exact_variance = m.variance;
    } else {
      row.exact_mean = exactprob::delta_mean_exact(N).mean;
    }
    row.ratio = row.exact_mean / std::log(static_cast<double>(N));
    if (options.replicates > 0) {
      ExperimentConfig c;
      c.seed = options.seed;
      c.statistic = Statistic::delta_fastpath;
      c.sizes = {N};
      c.replicates = options.replicates;
      c.workers = options.workers;
      const auto res = run_experiment(c);
      row.mc_mean = res.summaries.front().mean;
      row.mc_std_error = res.summaries.front().std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zeroset::mcharness
