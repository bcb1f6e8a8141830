#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/emit.hpp"

namespace qcs::cli {

enum class Command { special, ramanujan, algebra, coherent, completeness, evolve, verify_all };

struct RunConfig {
  Command command = Command::verify_all;
  double q = 0.5;
  double a1 = 1.0;
  double c = 1.0;
  int n_max = 8;
  int trunc = 32;
  /// When set, overrides every deterministic check threshold.
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000000;
  std::string output_path;
  Format format = Format::json;

  /// Throws qcs::InvalidParameter on out-of-range values.
  void validate() const;
};

/// Seed of a named random stream derived from the run seed.
std::uint64_t stream_seed(std::uint64_t seed, const std::string& name);

std::vector<ResultRow> suite_special(const RunConfig& cfg);
std::vector<ResultRow> suite_ramanujan(const RunConfig& cfg);
std::vector<ResultRow> suite_algebra(const RunConfig& cfg);
std::vector<ResultRow> suite_coherent(const RunConfig& cfg);
std::vector<ResultRow> suite_completeness(const RunConfig& cfg);
std::vector<ResultRow> suite_evolve(const RunConfig& cfg);

/// Runs the suite named by cfg.command (all of them for verify-all) and
/// returns the rows in deterministic order.
std::vector<ResultRow> run_suites(const RunConfig& cfg);

}  // namespace qcs::cli
