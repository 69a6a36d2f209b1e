#include "zeroset/serialize.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zeroset/errors.hpp"

namespace zeroset::serialize {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ValidationError("bad number in CSV: '" + s + "'");
  return v;
}

std::uint64_t parse_count(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ValidationError("bad integer in CSV: '" + s + "'");
  return v;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_sig15(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

void write_raw_csv(std::ostream& out, const mcharness::ExperimentResult& result) {
  out << kRawHeader << '\n';
  for (const auto& r : result.raw) out << r.N << ',' << r.replicate << ',' << r.value << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<mcharness::SummaryStats>& summaries) {
  out << kSummaryHeader << '\n';
  for (const auto& s : summaries) {
    out << s.N << ',' << s.M << ',' << format_real(s.mean) << ',' << format_real(s.variance) << ','
        << format_real(s.std_error) << ',' << format_real(s.min) << ',' << format_real(s.max) << '\n';
  }
}

std::vector<mcharness::SummaryStats> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw ValidationError("summary CSV must start with header '" + std::string(kSummaryHeader) + "'");
  }
  std::vector<mcharness::SummaryStats> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 7) throw ValidationError("summary CSV row must have 7 fields: '" + line + "'");
    mcharness::SummaryStats s;
    s.N = parse_count(cells[0]);
    s.M = parse_count(cells[1]);
    s.mean = parse_double(cells[2]);
    s.variance = parse_double(cells[3]);
    s.std_error = parse_double(cells[4]);
    s.min = parse_double(cells[5]);
    s.max = parse_double(cells[6]);
    rows.push_back(s);
  }
  return rows;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path.string() + "'");
  }
}

}  // namespace zeroset::serialize
