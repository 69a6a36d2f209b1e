#include "cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "zeroset/acceptance.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/exactprob.hpp"
#include "zeroset/mcharness.hpp"
#include "zeroset/render.hpp"
#include "zeroset/serialize.hpp"

namespace zeroset::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using serialize::format_real;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Holds an exclusive advisory lock on <dir>/.zeroset.lock for the lifetime of the object.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) {
    const fs::path p = dir / ".zeroset.lock";
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw IoError("cannot open lock file '" + p.string() + "'");
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw IoError("output directory '" + dir.string() + "' is in use by another zeroset command");
    }
  }
  ~DirLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

void remove_stale(const fs::path& manifest) {
  std::error_code ec;
  fs::remove(manifest, ec);
  if (ec) throw IoError("cannot remove stale manifest '" + manifest.string() + "'");
}

// Collects outputs, then writes the manifest last.
class Run {
 public:
  Run(std::string command, const fs::path& manifest) : command_(std::move(command)), manifest_(manifest) {
    remove_stale(manifest_);
    started_ = utc_now();
  }

  void write(const fs::path& path, std::string_view content) {
    serialize::atomic_write(path, content);
    files_.push_back(path.filename().string());
  }

  void finish(json config, std::optional<std::uint64_t> seed, unsigned workers) {
    json m;
    m["tool"] = "zeroset";
    m["tool_version"] = kToolVersion;
    m["generator"] = kGeneratorVersion;
    m["command"] = command_;
    m["config"] = std::move(config);
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["started_utc"] = started_;
    m["finished_utc"] = utc_now();
    m["workers"] = workers;
    m["files"] = files_;
    serialize::atomic_write(manifest_, m.dump(2) + "\n");
  }

 private:
  std::string command_;
  fs::path manifest_;
  std::string started_;
  std::vector<std::string> files_;
};

struct WorkerFlag {
  unsigned value = 0;
  CLI::Option* opt = nullptr;
};

unsigned resolve_workers(const WorkerFlag& flag) {
  if (flag.opt != nullptr && flag.opt->count() > 0) {
    if (flag.value == 0) throw ValidationError("--workers must be >= 1");
    return flag.value;
  }
  if (const char* env = std::getenv("WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 4096) throw ValidationError(std::string("WORKERS must be a positive integer, got '") + env + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void add_workers(CLI::App* app, WorkerFlag& flag) {
  flag.opt = app->add_option("--workers", flag.value, "Worker threads (default: $WORKERS, else logical cores)");
}

// ---------------------------------------------------------------------------
// exact

struct ExactArgs {
  std::int64_t max = 0;
  bool rational = false;
  std::vector<std::int64_t> n;
  std::int64_t n_max = 200;
  std::vector<std::int64_t> sizes;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  WorkerFlag workers;
  std::string out = ".";
};

std::vector<std::uint64_t> positive_list(const std::vector<std::int64_t>& xs, const char* flag) {
  if (xs.empty()) throw ValidationError(std::string(flag) + " needs at least one value");
  std::vector<std::uint64_t> r;
  for (const auto x : xs) {
    if (x < 1) throw ValidationError(std::string(flag) + " values must be >= 1");
    r.push_back(static_cast<std::uint64_t>(x));
  }
  return r;
}

int exact_pn(const ExactArgs& a) {
  if (a.max < 0) throw ValidationError("--max must be >= 0");
  const auto max = static_cast<std::uint64_t>(a.max);
  const auto& table = exactprob::default_table();
  if (max > table.exact_ceiling()) throw CapacityError("exact pn: --max above exact ceiling", table.exact_ceiling());
  const fs::path dir = prepare_dir(a.out);
  DirLock lock(dir);
  Run run("exact pn", dir / "manifest.json");
  std::ostringstream csv;
  csv << (a.rational ? serialize::kPnRationalHeader : serialize::kPnHeader) << '\n';
  for (std::uint64_t n = 0; n <= max; ++n) {
    csv << n << ',' << serialize::format_sig15(table.value(n));
    if (a.rational) {
      const mpq_class q = table.exact(n);
      csv << ',' << q.get_num().get_str() << ',' << q.get_den().get_str();
    }
    csv << '\n';
  }
  run.write(dir / "pn.csv", csv.str());
  run.finish(json{{"subtarget", "pn"}, {"max", max}, {"rational", a.rational}}, std::nullopt, 1);
  return kOk;
}

int exact_moment(const ExactArgs& a, const std::string& sub) {
  const auto ns = positive_list(a.n, "--n");
  std::ostringstream csv;
  const bool variance = sub == "delta-var";
  csv << (variance ? serialize::kVarianceHeader : serialize::kMeanHeader) << '\n';
  for (const auto n : ns) {
    exactprob::MomentReport m;
    if (sub == "delta-mean") {
      m = exactprob::delta_mean_exact(n);
    } else if (sub == "delta-var") {
      m = exactprob::delta_var_exact(n);
    } else if (sub == "gamma-mean") {
      m = exactprob::gamma_mean_exact(n);
    } else {
      m = exactprob::antidiag_mean_exact(n);
    }
    csv << n << ',' << format_real(variance ? *m.variance : m.mean) << ',' << format_real(m.centered) << '\n';
  }
  const fs::path dir = prepare_dir(a.out);
  DirLock lock(dir);
  Run run("exact " + sub, dir / "manifest.json");
  std::string file = sub;
  std::replace(file.begin(), file.end(), '-', '_');
  run.write(dir / (file + ".csv"), csv.str());
  run.finish(json{{"subtarget", sub}, {"n", ns}}, std::nullopt, 1);
  return kOk;
}

int exact_hit(const ExactArgs& a) {
  if (a.n_max < 1) throw ValidationError("--n-max must be >= 1");
  const auto n_max = static_cast<std::uint64_t>(a.n_max);
  const double k = exactprob::hit_constant_estimate(n_max);
  const fs::path dir = prepare_dir(a.out);
  DirLock lock(dir);
  Run run("exact hit-constant", dir / "manifest.json");
  std::ostringstream csv;
  csv << serialize::kHitHeader << '\n' << n_max << ',' << format_real(k) << '\n';
  run.write(dir / "hit_constant.csv", csv.str());
  run.finish(json{{"subtarget", "hit-constant"}, {"n_max", n_max}}, std::nullopt, 1);
  return kOk;
}

int exact_delta_law(const ExactArgs& a) {
  if (a.reps < 0) throw ValidationError("--reps must be >= 0");
  mcharness::DeltaLawOptions opts;
  opts.replicates = static_cast<std::uint64_t>(a.reps);
  opts.seed = Seed{a.seed};
  opts.workers = resolve_workers(a.workers);
  const auto sizes = positive_list(a.sizes, "--sizes");
  const auto rows = mcharness::delta_log_law_report(sizes, opts);
  std::ostringstream csv;
  csv << serialize::kDeltaLawHeader << '\n';
  for (const auto& r : rows) {
    csv << r.N << ',' << format_real(r.exact_mean) << ',' << (r.exact_variance ? format_real(*r.exact_variance) : "")
        << ',' << (r.mc_mean ? format_real(*r.mc_mean) : "") << ','
        << (r.mc_std_error ? format_real(*r.mc_std_error) : "") << ',' << format_real(r.ratio) << '\n';
  }
  const fs::path dir = prepare_dir(a.out);
  DirLock lock(dir);
  Run run("exact delta-law", dir / "manifest.json");
  run.write(dir / "delta_law.csv", csv.str());
  run.finish(json{{"subtarget", "delta-law"}, {"sizes", sizes}, {"replicates", opts.replicates}},
             opts.replicates > 0 ? std::optional<std::uint64_t>(a.seed) : std::nullopt, opts.workers);
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string stat;
  std::vector<std::int64_t> sizes;
  std::int64_t reps = 1;
  std::uint64_t seed = 0;
  WorkerFlag workers;
  double epsilon = 0.5;
  std::int64_t radius = 100;
  double alpha = 0.5;
  double beta = 0.25;
  std::string out = ".";
};

int simulate(const SimulateArgs& a) {
  mcharness::ExperimentConfig c;
  const auto stat = mcharness::parse_statistic(a.stat);
  if (!stat) throw ValidationError("unknown statistic '" + a.stat + "'");
  if (a.reps < 1) throw ValidationError("--reps must be >= 1");
  if (a.radius < 1) throw ValidationError("--radius must be >= 1");
  c.statistic = *stat;
  c.sizes = positive_list(a.sizes, "--sizes");
  c.replicates = static_cast<std::uint64_t>(a.reps);
  c.seed = Seed{a.seed};
  c.workers = resolve_workers(a.workers);
  c.epsilon = a.epsilon;
  c.radius = static_cast<std::uint64_t>(a.radius);
  c.alpha = a.alpha;
  c.beta = a.beta;
  mcharness::validate(c);

  const fs::path dir = prepare_dir(a.out);
  DirLock lock(dir);
  Run run("simulate", dir / "manifest.json");
  const auto result = mcharness::run_experiment(c);
  std::ostringstream raw;
  serialize::write_raw_csv(raw, result);
  std::ostringstream summary;
  serialize::write_summary_csv(summary, result.summaries);
  run.write(dir / "raw.csv", raw.str());
  run.write(dir / "summary.csv", summary.str());
  json config{{"statistic", std::string(mcharness::to_string(c.statistic))},
              {"sizes", c.sizes},
              {"replicates", c.replicates}};
  if (c.statistic == mcharness::Statistic::twin_zeros || c.statistic == mcharness::Statistic::annulus) {
    config["epsilon"] = c.epsilon;
  }
  if (c.statistic == mcharness::Statistic::twin_zeros) config["radius"] = c.radius;
  if (c.statistic == mcharness::Statistic::hitting) {
    config["alpha"] = c.alpha;
    config["beta"] = c.beta;
  }
  run.finish(std::move(config), c.seed.value, c.workers);
  return kOk;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  std::string input;
  double drop_below = 0;
  std::string out = ".";
};

int estimate(const EstimateArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw IoError("cannot read '" + a.input + "'");
  const auto rows = serialize::read_summary_csv(in);
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) pts.emplace_back(static_cast<double>(r.N), r.mean);
  const auto fit = mcharness::estimate_exponent(pts, a.drop_below);

  json report;
  report["slope"] = fit.slope;
  report["intercept"] = fit.intercept;
  report["stderr"] = fit.stderr_slope;
  report["points_used"] = fit.points_used;
  json residuals = json::array();
  for (const auto& p : fit.points) residuals.push_back(json{{"N", p.N}, {"mean", p.mean}, {"residual", p.residual}});
  report["residuals"] = std::move(residuals);
  report["excluded_nonpositive"] = fit.excluded_nonpositive;

  const fs::path dir = prepare_dir(a.out);
  DirLock lock(dir);
  Run run("estimate", dir / "manifest.json");
  run.write(dir / "report.json", report.dump(2) + "\n");
  run.finish(json{{"input", a.input}, {"drop_below", a.drop_below}}, std::nullopt, 1);
  return kOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderArgs {
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  std::uint64_t replicate = 0;
  std::string output;
};

fs::path render_manifest_path(const fs::path& output) {
  fs::path m = output;
  m.replace_extension(".manifest.json");
  return m;
}

int render_cmd(const RenderArgs& a) {
  if (a.n < 1) throw ValidationError("--n must be >= 1");
  const auto n = static_cast<std::uint64_t>(a.n);
  if (n > render::kRenderCeiling) throw CapacityError("render: --n above render ceiling", render::kRenderCeiling);
  const fs::path output(a.output);
  fs::path dir = output.parent_path();
  if (dir.empty()) dir = ".";
  if (!fs::is_directory(dir)) throw IoError("output directory '" + dir.string() + "' does not exist");
  DirLock lock(dir);
  Run run("render", render_manifest_path(output));
  const RademacherField field(StreamKey{Seed{a.seed}, a.replicate});
  run.write(output, render::zero_set_pgm(field, n));
  run.finish(json{{"n", n}, {"replicate", a.replicate}, {"output", output.filename().string()},
                  {"pixels", json{{"zero", render::kZeroPixel},
                                  {"negative", render::kNegativePixel},
                                  {"positive", render::kPositivePixel}}}},
             a.seed, 1);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string level = "quick";
  std::vector<int> criteria;
  std::string fault;
  WorkerFlag workers;
};

int verify(const VerifyArgs& a, std::ostream& out) {
  const auto level = acceptance::parse_level(a.level);
  if (!level) throw ValidationError("unknown level '" + a.level + "' (expected quick or full)");
  for (const int c : a.criteria) {
    if (c < 1 || c > acceptance::kCriterionCount) throw ValidationError("criteria are numbered 1.." + std::to_string(acceptance::kCriterionCount));
  }
  std::optional<exactprob::ReturnProbTable> faulty;
  acceptance::Options opts;
  opts.level = *level;
  opts.only = a.criteria;
  opts.workers = resolve_workers(a.workers);
  if (!a.fault.empty()) {
    if (a.fault != "pn-recurrence") throw ValidationError("unknown fault '" + a.fault + "' (known: pn-recurrence)");
    faulty.emplace();
    faulty->corrupt_entry(500);
    opts.table = &*faulty;
  }
  const auto results = acceptance::run(opts);
  out << acceptance::format_report(results);
  return acceptance::all_passed(results) ? kOk : kVerifyFailed;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero sets of the two-parameter simple random walk", "zeroset"};
  app.set_version_flag("--version", std::string(kToolVersion) + " (" + kGeneratorVersion + ")");
  app.require_subcommand(1);

  std::function<int()> action;

  ExactArgs ea;
  auto* exact = app.add_subcommand("exact", "Exact probabilities and moments");
  exact->require_subcommand(1);
  auto add_out = [](CLI::App* c, std::string& target) { c->add_option("--out", target, "Output directory")->capture_default_str(); };
  {
    auto* c = exact->add_subcommand("pn", "Return probabilities p(n) = C(2n,n) 4^-n for n = 0..max");
    c->add_option("--max", ea.max, "Largest n")->required();
    c->add_flag("--rational", ea.rational, "Add exact numerator and denominator columns");
    add_out(c, ea.out);
    c->callback([&] { action = [&] { return exact_pn(ea); }; });
  }
  for (const char* sub : {"delta-mean", "delta-var", "gamma-mean", "antidiag-mean"}) {
    auto* c = exact->add_subcommand(sub, std::string("Exact ") + sub);
    c->add_option("--n", ea.n, "Sizes N (comma separated)")->required()->delimiter(',');
    add_out(c, ea.out);
    const std::string name = sub;
    c->callback([&, name] { action = [&, name] { return exact_moment(ea, name); }; });
  }
  {
    auto* c = exact->add_subcommand("hit-constant", "Lower estimate of the hitting constant");
    c->add_option("--n-max", ea.n_max, "Largest n")->capture_default_str();
    add_out(c, ea.out);
    c->callback([&] { action = [&] { return exact_hit(ea); }; });
  }
  {
    auto* c = exact->add_subcommand("delta-law", "Exact diagonal mean/variance table with optional Monte Carlo column");
    c->add_option("--sizes", ea.sizes, "Sizes N (comma separated)")->required()->delimiter(',');
    c->add_option("--reps", ea.reps, "Monte Carlo replicates (0: none)")->capture_default_str();
    c->add_option("--seed", ea.seed, "Seed")->capture_default_str();
    add_workers(c, ea.workers);
    add_out(c, ea.out);
    c->callback([&] { action = [&] { return exact_delta_law(ea); }; });
  }

  SimulateArgs sa;
  {
    auto* c = app.add_subcommand("simulate", "Monte Carlo replicates of one statistic");
    c->add_option("--stat", sa.stat,
                  "gamma, gamma-prime, z, delta, delta-fast, antidiag, twin, annulus or hitting")
        ->required();
    c->add_option("--sizes", sa.sizes, "Sizes N (comma separated, increasing)")->required()->delimiter(',');
    c->add_option("--reps", sa.reps, "Replicates per size")->capture_default_str();
    c->add_option("--seed", sa.seed, "Seed")->capture_default_str();
    add_workers(c, sa.workers);
    c->add_option("--epsilon", sa.epsilon, "Wedge/annulus parameter")->capture_default_str();
    c->add_option("--radius", sa.radius, "Twin-zero L1 radius")->capture_default_str();
    c->add_option("--alpha", sa.alpha, "Hitting-set alpha")->capture_default_str();
    c->add_option("--beta", sa.beta, "Hitting-set beta")->capture_default_str();
    add_out(c, sa.out);
    c->callback([&] { action = [&] { return simulate(sa); }; });
  }

  EstimateArgs sta;
  {
    auto* c = app.add_subcommand("estimate", "Log-log slope of summary means");
    c->add_option("--input", sta.input, "summary.csv")->required();
    c->add_option("--drop-below", sta.drop_below, "Ignore sizes N below this")->capture_default_str();
    add_out(c, sta.out);
    c->callback([&] { action = [&] { return estimate(sta); }; });
  }

  RenderArgs ra;
  {
    auto* c = app.add_subcommand("render", "Write the sign map of S on [1,N]^2 as a binary PGM");
    c->add_option("--seed", ra.seed, "Seed")->capture_default_str();
    c->add_option("--n", ra.n, "Image side N")->required();
    c->add_option("--replicate", ra.replicate, "Replicate index")->capture_default_str();
    c->add_option("--output", ra.output, "Output .pgm path")->required();
    c->callback([&] { action = [&] { return render_cmd(ra); }; });
  }

  VerifyArgs va;
  {
    auto* c = app.add_subcommand("verify", "Run the acceptance suite");
    c->add_option("--level", va.level, "quick or full")->capture_default_str();
    c->add_option("--criteria", va.criteria, "Only these criteria (comma separated)")->delimiter(',');
    c->add_option("--inject-fault", va.fault, "Corrupt a component first (pn-recurrence)");
    add_workers(c, va.workers);
    c->callback([&] { action = [&] { return verify(va, out); }; });
  }

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("zeroset");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  return action ? action() : kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace zeroset::cli
