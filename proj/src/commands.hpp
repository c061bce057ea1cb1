#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "document.hpp"

namespace qvertex::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kInputError = 1, kDomainError = 2 };

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

struct SweepOptions {
  std::string path = "-";
  double k_min = 1e-2;
  double k_max = 1e2;
  Index points = 101;
  std::string scale = "log";  // log | linear
  std::string out;            // empty: standard output
};

struct FilterDemoOptions {
  std::string preset;  // fig1 | fig2, or empty for explicit constants
  std::optional<FilterParams<double>> params;
  double threshold = 3.0;
  std::string report;  // empty: standard error
};

int cmd_validate(const std::string& path, Streams io);
int cmd_convert(const std::string& path, const std::string& target, Streams io);
int cmd_smatrix(const std::string& path, double k, Streams io);
int cmd_sweep(const SweepOptions& opt, Streams io);
int cmd_filter_demo(const FilterDemoOptions& opt, Streams io);
int cmd_params(Index n, Index rank_a, Index rank_b, Streams io);

/// CSV header for an n-edge sweep: k, then S11.. (S{i}_{j} from n = 10 on),
/// then B{mu}{nu} for every pair of non-empty blocks.
std::string sweep_header(Index n, const std::vector<Index>& blocks);

/// Writes the whole sweep as CSV.
void write_sweep_csv(const SweepTable<double>& table, std::ostream& out);

/// Plain-text limits table, comparison and classification for a filter.
void write_filter_report(const FilterParams<double>& fp, double threshold, std::ostream& out);

}  // namespace qvertex::cli
