#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ff::cli {

struct Config {
  unsigned prime = 0;  // 0: taken from the input
  std::size_t order_cap = 1'000'000;
  std::size_t bar_cap = 200;
  std::size_t syllable_bound = 4;
  std::uint64_t seed = 0;
  std::string output;  // report path; empty for stdout
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). The JSON report goes
/// to `out` or to the configured output file; diagnostics and usage go to
/// `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ff::cli
