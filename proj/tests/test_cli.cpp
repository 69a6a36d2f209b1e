#include <doctest.h>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/serialize.hpp"

namespace fs = std::filesystem;
using zeroset::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("zeroset_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json manifest(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

}  // namespace

TEST_CASE("exact pn table") {
  TempDir d;
  const auto r = cli({"exact", "pn", "--max", "4", "--out", d.str()});
  REQUIRE(r.code == 0);
  CHECK(slurp(d / "pn.csv") == "n,p\n0,1\n1,0.5\n2,0.375\n3,0.3125\n4,0.2734375\n");
  const auto m = manifest(d / "manifest.json");
  CHECK(m["files"] == nlohmann::json::array({"pn.csv"}));
  CHECK(m["command"] == "exact pn");
  CHECK(m.contains("tool_version"));
  CHECK(m.contains("started_utc"));

  REQUIRE(cli({"exact", "pn", "--max", "2", "--rational", "--out", d.str()}).code == 0);
  CHECK(slurp(d / "pn.csv") == "n,p,numerator,denominator\n0,1,1,1\n1,0.5,1,2\n2,0.375,3,8\n");
}

TEST_CASE("exact pn: 15 significant digits") {
  TempDir d;
  REQUIRE(cli({"exact", "pn", "--max", "10", "--out", d.str()}).code == 0);
  const std::string csv = slurp(d / "pn.csv");
  // p(10) = 46189/262144
  CHECK(csv.find("\n10,0.176197052001953\n") != std::string::npos);
}

TEST_CASE("exact pn: usage and capacity errors") {
  TempDir d;
  CHECK(cli({"exact", "pn", "--max", "-1", "--out", d.str()}).code == 2);
  CHECK(cli({"exact", "pn", "--out", d.str()}).code == 2);
  const auto r = cli({"exact", "pn", "--max", "10001", "--out", d.str()});
  CHECK(r.code == 3);
  CHECK(r.err.find("10000") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "pn.csv"));
  CHECK_FALSE(fs::exists(d / "manifest.json"));
}

TEST_CASE("exact moments") {
  TempDir d;
  REQUIRE(cli({"exact", "delta-mean", "--n", "2", "--out", d.str()}).code == 0);
  const std::string csv = slurp(d / "delta_mean.csv");
  CHECK(csv.rfind("N,mean,centered\n2,0.571380615234375,", 0) == 0);

  REQUIRE(cli({"exact", "delta-var", "--n", "1,2", "--out", d.str()}).code == 0);
  CHECK(slurp(d / "delta_var.csv").rfind("N,variance,centered\n1,0.234375,0.234375\n2,", 0) == 0);

  REQUIRE(cli({"exact", "gamma-mean", "--n", "4", "--out", d.str()}).code == 0);
  CHECK(slurp(d / "gamma_mean.csv").rfind("N,mean,centered\n4,3.944427490234375,", 0) == 0);

  REQUIRE(cli({"exact", "antidiag-mean", "--n", "3", "--out", d.str()}).code == 0);
  CHECK(slurp(d / "antidiag_mean.csv").rfind("N,mean,centered\n3,1,", 0) == 0);

  REQUIRE(cli({"exact", "hit-constant", "--n-max", "5", "--out", d.str()}).code == 0);
  CHECK(slurp(d / "hit_constant.csv") == "n_max,estimate\n5,1\n");

  REQUIRE(cli({"exact", "delta-law", "--sizes", "10,100", "--reps", "20", "--seed", "1", "--workers", "2", "--out",
               d.str()})
              .code == 0);
  CHECK(slurp(d / "delta_law.csv").rfind(std::string(zeroset::serialize::kDeltaLawHeader) + "\n10,", 0) == 0);

  CHECK(cli({"exact", "delta-var", "--n", "5000", "--out", d.str()}).code == 3);
  CHECK(cli({"exact", "antidiag-mean", "--n", "1", "--out", d.str()}).code == 2);
  CHECK(cli({"exact", "bogus", "--out", d.str()}).code == 2);
}

TEST_CASE("simulate: determinism and shape") {
  TempDir a;
  TempDir b;
  REQUIRE(cli({"simulate", "--stat", "delta-fast", "--sizes", "100", "--reps", "1000", "--seed", "7", "--workers", "1",
               "--out", a.str()})
              .code == 0);
  REQUIRE(cli({"simulate", "--stat", "delta-fast", "--sizes", "100", "--reps", "1000", "--seed", "7", "--workers", "8",
               "--out", b.str()})
              .code == 0);
  CHECK(slurp(a / "raw.csv") == slurp(b / "raw.csv"));
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
  CHECK(slurp(a / "raw.csv").rfind("N,replicate,value\n100,0,", 0) == 0);
  const auto m = manifest(b / "manifest.json");
  CHECK(m["workers"] == 8);
  CHECK(m["seed"] == 7);
  CHECK(m["files"] == nlohmann::json::array({"raw.csv", "summary.csv"}));

  TempDir g;
  REQUIRE(cli({"simulate", "--stat", "gamma", "--sizes", "64,128,256", "--reps", "50", "--seed", "1", "--out", g.str()})
              .code == 0);
  std::ifstream in(g / "summary.csv");
  const auto rows = zeroset::serialize::read_summary_csv(in);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.M == 50);
}

TEST_CASE("simulate: errors") {
  TempDir d;
  CHECK(cli({"simulate", "--stat", "nope", "--sizes", "10", "--out", d.str()}).code == 2);
  CHECK(cli({"simulate", "--stat", "gamma", "--sizes", "20,10", "--out", d.str()}).code == 2);
  CHECK(cli({"simulate", "--stat", "gamma", "--sizes", "10", "--reps", "0", "--out", d.str()}).code == 2);
  CHECK(cli({"simulate", "--stat", "gamma", "--sizes", "40000", "--out", d.str()}).code == 3);
  CHECK(cli({"simulate", "--stat", "twin", "--sizes", "10", "--epsilon", "2", "--out", d.str()}).code == 2);
  CHECK_FALSE(fs::exists(d / "manifest.json"));
}

TEST_CASE("WORKERS environment variable") {
  TempDir d;
  ::setenv("WORKERS", "3", 1);
  REQUIRE(cli({"simulate", "--stat", "z", "--sizes", "8", "--reps", "4", "--out", d.str()}).code == 0);
  CHECK(manifest(d / "manifest.json")["workers"] == 3);
  REQUIRE(cli({"simulate", "--stat", "z", "--sizes", "8", "--reps", "4", "--workers", "2", "--out", d.str()}).code == 0);
  CHECK(manifest(d / "manifest.json")["workers"] == 2);
  ::setenv("WORKERS", "zero", 1);
  CHECK(cli({"simulate", "--stat", "z", "--sizes", "8", "--reps", "4", "--out", d.str()}).code == 2);
  ::unsetenv("WORKERS");
  REQUIRE(cli({"simulate", "--stat", "z", "--sizes", "8", "--reps", "4", "--out", d.str()}).code == 0);
  CHECK(manifest(d / "manifest.json")["workers"] >= 1);
}

TEST_CASE("estimate") {
  TempDir d;
  {
    std::ofstream out(d / "summary.csv");
    out << "N,M,mean,variance,stderr,min,max\n";
    for (int n : {10, 20, 40, 80}) out << n << ",5," << n * std::sqrt(static_cast<double>(n)) << ",1,0.1,0,1000\n";
  }
  REQUIRE(cli({"estimate", "--input", d / "summary.csv", "--out", d.str()}).code == 0);
  const auto rep = nlohmann::json::parse(slurp(d / "report.json"));
  CHECK(rep["slope"].get<double>() == doctest::Approx(1.5));
  CHECK(rep["points_used"] == 4);
  CHECK(rep["residuals"].size() == 4);
  CHECK(rep.contains("stderr"));

  REQUIRE(cli({"estimate", "--input", d / "summary.csv", "--drop-below", "30", "--out", d.str()}).code == 0);
  CHECK(nlohmann::json::parse(slurp(d / "report.json"))["points_used"] == 2);

  const auto few = cli({"estimate", "--input", d / "summary.csv", "--drop-below", "50", "--out", d.str()});
  CHECK(few.code == 2);
  CHECK(few.err.find("fewer than 2") != std::string::npos);

  {
    std::ofstream out(d / "bad.csv");
    out << "N,mean\n1,2\n";
  }
  CHECK(cli({"estimate", "--input", d / "bad.csv", "--out", d.str()}).code == 2);
  CHECK(cli({"estimate", "--input", d / "missing.csv", "--out", d.str()}).code == 4);
}

TEST_CASE("render") {
  TempDir d;
  const std::string a = d / "a.pgm";
  const std::string b = d / "b.pgm";
  REQUIRE(cli({"render", "--seed", "7", "--n", "256", "--output", a}).code == 0);
  REQUIRE(cli({"render", "--seed", "7", "--n", "256", "--output", b}).code == 0);
  const std::string img = slurp(a);
  CHECK(img == slurp(b));
  CHECK(img.size() == std::string("P5\n256 256\n255\n").size() + 256 * 256);
  CHECK(img.rfind("P5\n256 256\n255\n", 0) == 0);
  const auto m = manifest(d / "a.manifest.json");
  CHECK(m["files"] == nlohmann::json::array({"a.pgm"}));
  CHECK(m["seed"] == 7);

  CHECK(cli({"render", "--seed", "7", "--n", "8193", "--output", a}).code == 3);
  CHECK(cli({"render", "--seed", "7", "--n", "4", "--output", "/nonexistent_dir/x.pgm"}).code == 4);
  CHECK(cli({"render", "--seed", "7", "--n", "4", "--output", d.str()}).code == 4);
}

TEST_CASE("advisory lock blocks concurrent commands on one directory") {
  TempDir d;
  const std::string lock = d / ".zeroset.lock";
  const int fd = ::open(lock.c_str(), O_RDWR | O_CREAT, 0644);
  REQUIRE(fd >= 0);
  REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
  CHECK(cli({"exact", "pn", "--max", "3", "--out", d.str()}).code == 4);
  ::flock(fd, LOCK_UN);
  ::close(fd);
  CHECK(cli({"exact", "pn", "--max", "3", "--out", d.str()}).code == 0);
}

TEST_CASE("stale manifest is removed before outputs are rewritten") {
  TempDir d;
  {
    std::ofstream out(d / "manifest.json");
    out << "{\"stale\": true}";
  }
  CHECK(cli({"simulate", "--stat", "gamma", "--sizes", "40000", "--out", d.str()}).code == 3);
  CHECK(fs::exists(d / "manifest.json"));
  REQUIRE(cli({"exact", "pn", "--max", "1", "--out", d.str()}).code == 0);
  CHECK_FALSE(manifest(d / "manifest.json").contains("stale"));
}

TEST_CASE("verify") {
  const auto ok = cli({"verify", "--level", "quick", "--criteria", "1,2,12"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("[PASS] criterion  1") != std::string::npos);
  CHECK(ok.out.find("[PASS] criterion 12") != std::string::npos);

  const auto bad = cli({"verify", "--level", "quick", "--criteria", "1", "--inject-fault", "pn-recurrence"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("[FAIL] criterion  1") != std::string::npos);
  CHECK(bad.out.find("recurrence") != std::string::npos);
  CHECK(bad.out.find("BROKEN at n=499") != std::string::npos);

  CHECK(cli({"verify", "--level", "medium"}).code == 2);
  CHECK(cli({"verify", "--criteria", "14"}).code == 2);
  CHECK(cli({"verify", "--inject-fault", "nothing"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  const auto h = cli({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("simulate") != std::string::npos);
  const auto v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(zeroset::cli::kToolVersion) != std::string::npos);
}

TEST_CASE("serialization helpers") {
  using namespace zeroset::serialize;
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(2.5) == "2.5");
  CHECK(format_real(1e-20) == "1e-20");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_sig15(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_sig15(1.0) == "1");
  std::istringstream bad("N,M,mean\n");
  CHECK_THROWS_AS(read_summary_csv(bad), zeroset::ValidationError);
  std::istringstream short_row("N,M,mean,variance,stderr,min,max\n1,2,3\n");
  CHECK_THROWS_AS(read_summary_csv(short_row), zeroset::ValidationError);
  std::istringstream good("N,M,mean,variance,stderr,min,max\n4,2,1.5,0.5,0.5,1,2\n");
  const auto rows = read_summary_csv(good);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean == 1.5);

  TempDir d;
  atomic_write(d / "x.txt", "hello");
  CHECK(slurp(d / "x.txt") == "hello");
  CHECK_THROWS_AS(atomic_write("/nonexistent_dir/x.txt", "y"), zeroset::IoError);
  for (const auto& e : fs::directory_iterator(d.path())) CHECK(e.path().filename() == "x.txt");
}
