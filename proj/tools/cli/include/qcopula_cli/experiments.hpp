#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcopula/copula.hpp"
#include "qcopula/json_io.hpp"

namespace qcopula::cli {

struct ExperimentOptions {
  std::string suite;
  std::uint64_t seed = 1;
  int count = 100;
  int dim_a = 2;
  int dim_b = 2;
  SolverConfig config;
  unsigned threads = 0;  // 0 = hardware concurrency
};

const std::vector<std::string>& suite_names();
bool is_known_suite(const std::string& name);

/// Runs one property suite; case i draws from seed + i. The returned document
/// has "all_passed" plus per-suite aggregates, ordered by case index
/// regardless of thread scheduling.
json run_suite(const ExperimentOptions& opts);

/// Thread cap from QCOPULA_THREADS (unset or 0 = auto).
unsigned threads_from_env();

}  // namespace qcopula::cli
