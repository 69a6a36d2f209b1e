#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "zeroset/errors.hpp"
#include "zeroset/exactprob.hpp"
#include "zeroset/mcharness.hpp"
#include "zeroset/serialize.hpp"

using namespace zeroset;
using namespace zeroset::mcharness;

namespace {

ExperimentConfig config(Statistic s, std::vector<std::uint64_t> sizes, std::uint64_t reps, std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.statistic = s;
  c.sizes = std::move(sizes);
  c.replicates = reps;
  c.seed = Seed{seed};
  return c;
}

std::string raw_csv(const ExperimentConfig& c) {
  std::ostringstream out;
  serialize::write_raw_csv(out, run_experiment(c));
  return out.str();
}

}  // namespace

TEST_CASE("statistic names round-trip") {
  for (auto s : {Statistic::gamma, Statistic::gamma_prime, Statistic::z_crossings, Statistic::delta,
                 Statistic::delta_fastpath, Statistic::d_antidiag, Statistic::twin_zeros, Statistic::annulus,
                 Statistic::hitting}) {
    CHECK(parse_statistic(to_string(s)) == s);
  }
  CHECK(parse_statistic("delta_fastpath") == Statistic::delta_fastpath);
  CHECK_FALSE(parse_statistic("nope").has_value());
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(config(Statistic::gamma, {}, 1)), ValidationError);
  CHECK_THROWS_AS(validate(config(Statistic::gamma, {10}, 0)), ValidationError);
  CHECK_THROWS_AS(validate(config(Statistic::gamma, {10, 10}, 1)), ValidationError);
  CHECK_THROWS_AS(validate(config(Statistic::gamma, {0}, 1)), ValidationError);
  CHECK_THROWS_AS(validate(config(Statistic::twin_zeros, {1}, 1)), ValidationError);
  auto bad_eps = config(Statistic::annulus, {10}, 1);
  bad_eps.epsilon = 1.0;
  CHECK_THROWS_AS(validate(bad_eps), ValidationError);
  auto bad_beta = config(Statistic::hitting, {10}, 1);
  bad_beta.beta = 0.5;
  CHECK_THROWS_AS(validate(bad_beta), ValidationError);
  CHECK_THROWS_AS(validate(config(Statistic::gamma, {40'000}, 1)), CapacityError);
  CHECK_NOTHROW(validate(config(Statistic::delta_fastpath, {1'000'000}, 1)));
}

TEST_CASE("summarize") {
  const std::vector<std::int64_t> v{1, 2, 3, 4};
  const auto s = summarize(9, v);
  CHECK(s.N == 9);
  CHECK(s.M == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  CHECK(s.min == 1);
  CHECK(s.max == 4);
  const std::vector<std::int64_t> one{7};
  CHECK(summarize(1, one).variance == 0);
  CHECK_THROWS_AS(summarize(1, {}), ValidationError);
}

TEST_CASE("exponent estimation on synthetic means") {
  std::vector<std::pair<double, double>> lin;
  std::vector<std::pair<double, double>> pow15;
  for (double n : {64.0, 128.0, 256.0, 512.0}) {
    lin.emplace_back(n, n);
    pow15.emplace_back(n, std::pow(n, 1.5));
  }
  const auto a = estimate_exponent(lin);
  CHECK(a.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.intercept == doctest::Approx(0.0).scale(1));
  CHECK(a.stderr_slope == doctest::Approx(0.0).scale(1));
  CHECK(a.points_used == 4);
  for (const auto& p : a.points) CHECK(std::abs(p.residual) < 1e-12);
  CHECK(estimate_exponent(pow15).slope == doctest::Approx(1.5).epsilon(1e-12));

  std::vector<std::pair<double, double>> mixed{{10, 5.0}, {20, 0.0}, {40, 40.0}, {80, 80.0}, {160, 160.0}};
  const auto m = estimate_exponent(mixed);
  CHECK(m.points_used == 4);
  CHECK(m.excluded_nonpositive == std::vector<double>{20});
  const auto d = estimate_exponent(mixed, 30);
  CHECK(d.points_used == 3);
  CHECK(d.slope == doctest::Approx(1.0));
  CHECK_THROWS_AS(estimate_exponent(mixed, 100), ValidationError);
  const std::vector<std::pair<double, double>> two{{8, 8.0}, {16, 32.0}};
  const auto t = estimate_exponent(two);
  CHECK(t.slope == doctest::Approx(2.0));
  CHECK(t.stderr_slope == 0.0);
}

TEST_CASE("z-score against an exact mean") {
  SummaryStats s;
  s.M = 10;
  s.mean = 3.0;
  s.std_error = 0.5;
  CHECK(compare_to_exact(s, 2.0).z == doctest::Approx(2.0));
  CHECK_FALSE(compare_to_exact(s, 2.0).flagged);
  s.std_error = 0;
  CHECK(compare_to_exact(s, 3.0).z == 0.0);
  const auto z = compare_to_exact(s, 2.0);
  CHECK(z.flagged);
  CHECK(std::isinf(z.z));
  s.M = 1;
  CHECK_THROWS_AS(compare_to_exact(s, 2.0), ValidationError);
}

TEST_CASE("results do not depend on the worker count") {
  for (auto c : {config(Statistic::delta_fastpath, {100, 1000}, 300, 7), config(Statistic::z_crossings, {20, 33}, 25, 3),
                 config(Statistic::twin_zeros, {30}, 13, 5), config(Statistic::hitting, {50}, 9, 2)}) {
    c.workers = 1;
    const std::string ref = raw_csv(c);
    for (unsigned w : {2U, 3U, 8U, 64U}) {
      c.workers = w;
      CHECK(raw_csv(c) == ref);
    }
  }
}

TEST_CASE("raw records are ordered by size then replicate") {
  auto c = config(Statistic::gamma, {8, 16}, 5);
  c.workers = 3;
  const auto res = run_experiment(c);
  REQUIRE(res.raw.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(res.raw[k].N == (k < 5 ? 8U : 16U));
    CHECK(res.raw[k].replicate == k % 5);
    CHECK(res.raw[k].value == measure(c, res.raw[k].N, res.raw[k].replicate));
  }
  CHECK(res.summaries.size() == 2);
  CHECK(res.summaries[1].M == 5);
}

TEST_CASE("grid statistics against exact means") {
  struct Case {
    Statistic stat;
    std::uint64_t N;
    double exact;
  };
  const Case cases[] = {
      {Statistic::gamma, 32, exactprob::gamma_mean_exact(32).mean},
      {Statistic::delta, 60, exactprob::delta_mean_exact(30).mean},
      {Statistic::d_antidiag, 64, exactprob::antidiag_mean_exact(64).mean},
      {Statistic::delta_fastpath, 500, exactprob::delta_mean_exact(500).mean},
  };
  for (const auto& cs : cases) {
    CAPTURE(to_string(cs.stat));
    auto c = config(cs.stat, {cs.N}, 3000, 41);
    c.workers = 4;
    const auto res = run_experiment(c);
    CHECK(std::abs(compare_to_exact(res.summaries.front(), cs.exact).z) < 4.0);
  }
}

TEST_CASE("fast-path variance against the exact pair sum") {
  const std::uint64_t N = 50;
  const std::uint64_t M = 8000;
  auto c = config(Statistic::delta_fastpath, {N}, M, 99);
  c.workers = 4;
  const auto res = run_experiment(c);
  const double exact = *exactprob::delta_var_exact(N).variance;
  // Sample variance has sd about sigma^2 sqrt(2/(M-1)) (plus a kurtosis term); allow a wide band.
  CHECK(std::abs(res.summaries.front().variance - exact) < 6 * exact * std::sqrt(2.0 / (M - 1)) + 0.05);
}

TEST_CASE("delta law report") {
  const std::vector<std::uint64_t> sizes{10, 100, 5000};
  DeltaLawOptions o;
  o.replicates = 200;
  o.seed = Seed{3};
  o.workers = 2;
  const auto rows = delta_log_law_report(sizes, o);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].exact_variance.has_value());
  CHECK_FALSE(rows[2].exact_variance.has_value());
  CHECK(rows[1].exact_mean == doctest::Approx(exactprob::delta_mean_exact(100).mean));
  CHECK(rows[1].ratio == doctest::Approx(rows[1].exact_mean / std::log(100.0)));
  CHECK(rows[2].mc_mean.has_value());
  const std::vector<std::uint64_t> bad{10, 10};
  CHECK_THROWS_AS(delta_log_law_report(bad), ValidationError);
  const std::vector<std::uint64_t> one{1};
  CHECK_THROWS_AS(delta_log_law_report(one), ValidationError);
  CHECK_FALSE(delta_log_law_report(sizes).front().mc_mean.has_value());
}
