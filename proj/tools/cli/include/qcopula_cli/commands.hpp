#pragma once

#include <optional>
#include <string>

#include "qcopula/copula.hpp"
#include "qcopula/error.hpp"
#include "qcopula_cli/experiments.hpp"

namespace qcopula::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCasesFailed = 1,
  kExitNotConverged = 2,
  kExitInvalidInput = 3,
  kExitUnknownSuite = 4,
  kExitUsage = 5,
  kExitNumerical = 6,
  kExitOutput = 7,
};

/// Per-flag overrides applied on top of the config file.
struct ConfigOverrides {
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<bool> regularize;
  std::optional<double> reg_eps;
};

struct CopulaCommand {
  std::string input_path;
  std::optional<std::string> config_path;
  std::optional<std::string> output_path;  // stdout when empty
  ConfigOverrides overrides;
  bool timing = true;
};

struct ExperimentCommand {
  std::string suite;
  std::uint64_t seed = 1;
  int count = 100;
  int dim_a = 2;
  int dim_b = 2;
  std::optional<std::string> config_path;
  std::optional<std::string> output_path;
  ConfigOverrides overrides;
};

struct ClassicalCommand {
  std::string input_path;
  std::optional<std::string> output_path;
  double tol = 1e-12;
  int max_iter = 10000;
};

// Each command reports diagnostics on stderr and returns an ExitCode.
int cmd_copula(const CopulaCommand& c);
int cmd_experiment(const ExperimentCommand& c);
int cmd_classical(const ClassicalCommand& c);

/// Exit code for an error raised by the core library.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace qcopula::cli
