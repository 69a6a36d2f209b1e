#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "zeroset/mcharness.hpp"

namespace zeroset::serialize {

inline constexpr std::string_view kRawHeader = "N,replicate,value";
inline constexpr std::string_view kSummaryHeader = "N,M,mean,variance,stderr,min,max";
inline constexpr std::string_view kPnHeader = "n,p";
inline constexpr std::string_view kPnRationalHeader = "n,p,numerator,denominator";
inline constexpr std::string_view kMeanHeader = "N,mean,centered";
inline constexpr std::string_view kVarianceHeader = "N,variance,centered";
inline constexpr std::string_view kHitHeader = "n_max,estimate";
inline constexpr std::string_view kDeltaLawHeader = "N,exact_mean,exact_variance,mc_mean,mc_stderr,ratio";

/// Shortest decimal that parses back to the same double.
std::string format_real(double x);

/// Decimal expansion to 15 significant digits (used for exact rationals).
std::string format_sig15(double x);

void write_raw_csv(std::ostream& out, const mcharness::ExperimentResult& result);
void write_summary_csv(std::ostream& out, const std::vector<mcharness::SummaryStats>& summaries);

/// Reads a summary CSV; throws ValidationError on a bad header or row.
std::vector<mcharness::SummaryStats> read_summary_csv(std::istream& in);

/// Writes to a temporary sibling and renames it over `path`. Throws IoError.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace zeroset::serialize
