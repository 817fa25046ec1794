#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "alttrace/compare.hpp"
#include "alttrace/trace_lab.hpp"

namespace alttrace {

struct RunConfig {
  SystemParams params;
  int max_degree = 8;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::uint64_t curve_budget = 4096;
  std::string cache_dir;  // empty: no cache
  unsigned threads = 1;
  std::string format = "csv";  // csv | json
  Tolerances tolerances;

  void validate() const;
  /// Everything that affects output bytes (threads and cache location do not).
  std::string canonical() const;
  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCacheEnv = "ALTTRACE_CACHE_DIR";

/// Entire command-line surface; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alttrace
