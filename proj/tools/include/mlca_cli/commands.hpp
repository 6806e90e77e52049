#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "mlca_cli/report.hpp"
#include "mlca_cli/rule_parser.hpp"

namespace mlca::cli {

struct CommandOptions {
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> order;
  std::optional<std::uint64_t> lmax;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> period;
  std::optional<std::string> config;  // JSON array of cells, e.g. [[1,0],[0,1]]
  unsigned threads = 1;
};

// Defaults used when neither the rule file nor the options say otherwise.
inline constexpr std::uint64_t kDefaultOrbitLength = 12;
inline constexpr std::uint64_t kDefaultZetaOrder = 10;
inline constexpr std::uint64_t kDefaultFieldLevel = 6;
inline constexpr std::uint64_t kDefaultVerifyIterates = 4;
inline constexpr std::uint64_t kOracleIterates = 5;
inline constexpr std::size_t kOracleMaxDimension = 120;

AnalysisReport analyze(const RuleSpec& spec, const CommandOptions& options);

nlohmann::json cmd_analyze(const RuleSpec& spec, const CommandOptions& options);
nlohmann::json cmd_fixcount(const RuleSpec& spec, const CommandOptions& options);
nlohmann::json cmd_zeta(const RuleSpec& spec, const CommandOptions& options);
nlohmann::json cmd_orbits(const RuleSpec& spec, const CommandOptions& options);
nlohmann::json cmd_simulate(const RuleSpec& spec, const CommandOptions& options);
// The result carries "passed"; the tool exits 1 when it is false.
nlohmann::json cmd_verify(const RuleSpec& spec, const CommandOptions& options);
// A rule file for the companion matrix of the rule file's blocks.
nlohmann::json cmd_companion(const RuleSpec& spec, const CommandOptions& options);

// Runs f(0..count-1) on up to `threads` workers. Results must be written to
// per-index slots so output order never depends on scheduling.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mlca::cli
