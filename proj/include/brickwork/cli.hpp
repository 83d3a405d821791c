// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_CLI_HPP
#define BRICKWORK_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace brickwork::cli
{

inline constexpr std::string_view kToolName = "brickwork";
inline constexpr std::string_view kToolVersion = "1.0.0";
// Directory for output files when --output is absent. Unset means stdout.
inline constexpr const char *kOutputDirEnv = "BRICKWORK_OUTPUT_DIR";

enum ExitCode : int
{
  kOk = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kSingularParameters = 4
};

using Cell = std::variant<double, long long, std::string, bool>;

struct Table
{
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// 17 significant digits; "nan"/"inf" spelled out.
std::string format_double(double v);

// Metadata as "# key: value" lines, one header line, then rows.
std::string render_csv(const Table &t);
// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
std::string render_json(const Table &t);

// Real literal or a multiple of pi: "0.5", "-1e-3", "pi", "pi/4", "2pi/3", "0.25*pi".
double parse_real(std::string_view text);

// "a,b,c" literal list or "start:stop:count" evenly spaced inclusive range.
std::vector<double> parse_grid(std::string_view text);
std::vector<std::size_t> parse_count_list(std::string_view text);

// Flat "key = value" lines; '#' starts a comment. Keys mirror long flag names.
std::map<std::string, std::string> read_config_file(const std::string &path);

// Full command-line entry point. Writes data to the chosen file or to `out`,
// diagnostics to `err`, and returns an ExitCode.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace brickwork::cli

#endif  // BRICKWORK_CLI_HPP
