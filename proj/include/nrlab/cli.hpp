/**
 * @file cli.hpp
 * @brief Command-line front end.
 *
 * Exit codes: 0 success or all verdicts pass, 1 verdict fail or runtime failure,
 * 2 usage or configuration error.
 */
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace nrlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitUsage = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Removes `--config FILE` / `--config=FILE` from args and inserts `--key=value`
/// right after the subcommand for every key of the flat key=value file that is
/// not already given on the command line. Underscores in keys map to dashes.
/// If `accepts(subcommand, flag)` is given, keys it rejects are skipped.
/// Throws std::invalid_argument on unreadable files or malformed lines.
using FlagFilter = std::function<bool(const std::string& subcommand, const std::string& flag)>;
std::vector<std::string> apply_config_file(const std::vector<std::string>& args, const FlagFilter& accepts = {});

struct GridSpec {
    int n_r = 64;
    int n_theta = 256;
};

/// "64x256" -> {64, 256}. Throws std::invalid_argument.
GridSpec parse_grid(const std::string& text);

}  // namespace nrlab
