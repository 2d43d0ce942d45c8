#include "qcopula_cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcopula/error.hpp"
#include "qcopula/json_io.hpp"
#include "qcopula/sinkhorn.hpp"
#include "qcopula/states.hpp"
#include "qcopula_cli/digest.hpp"

namespace qcopula::cli {

namespace {

// Thrown for I/O failures so each maps to a single exit code.
struct IoFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{kExitInvalidInput, "cannot read input file \"" + path + "\""};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure{kExitInvalidInput, "error while reading \"" + path + "\""};
  return ss.str();
}

json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "\"" + path + "\" is not valid JSON: " + e.what());
  }
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path || path->empty() || *path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoFailure{kExitOutput, "cannot write to stdout"};
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure{kExitOutput, "cannot open output file \"" + *path + "\""};
  out << text;
  out.close();
  if (!out) throw IoFailure{kExitOutput, "error while writing \"" + *path + "\""};
}

void validate_config(const SolverConfig& cfg) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::ParseError, "invalid config: " + what); };
  if (!(cfg.tol > 0.0)) bad("tol must be positive");
  if (!(cfg.marginal_tol > 0.0)) bad("marginal_tol must be positive");
  if (cfg.max_iter < 1) bad("max_iter must be at least 1");
  if (!(cfg.rank_tol > 0.0)) bad("rank_tol must be positive");
  if (!(cfg.reg_eps > 0.0 && cfg.reg_eps < 1.0)) bad("reg_eps must lie in (0, 1)");
}

SolverConfig effective_config(const std::optional<std::string>& config_path, const ConfigOverrides& o) {
  SolverConfig cfg;
  if (config_path) cfg = config_from_json(parse_json(read_file(*config_path), *config_path));
  if (o.tol) cfg.tol = *o.tol;
  if (o.max_iter) cfg.max_iter = *o.max_iter;
  if (o.regularize) cfg.regularize = *o.regularize;
  if (o.reg_eps) cfg.reg_eps = *o.reg_eps;
  validate_config(cfg);
  return cfg;
}

json verdict_to_json(const SeparabilityVerdict& v) {
  return json{{"tag", std::string(to_string(v.tag))}, {"min_pt_eigenvalue", v.min_pt_eigenvalue}};
}

// Runs `body`, mapping every failure to its exit code and a stderr line.
template <typename Body>
int guarded(const char* command, Body&& body) {
  try {
    return body();
  } catch (const IoFailure& f) {
    std::cerr << "qcopula " << command << ": " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    std::cerr << "qcopula " << command << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "qcopula " << command << ": internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotConverged:
      return kExitNotConverged;
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NonFinite:
    case ErrorCode::NotHermitian:
    case ErrorCode::NotPSD:
    case ErrorCode::ZeroMatrix:
    case ErrorCode::InvalidState:
    case ErrorCode::RankDeficient:
    case ErrorCode::NonPositiveEntry:
    case ErrorCode::ParseError:
      return kExitInvalidInput;
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::DegenerateSample:
    case ErrorCode::SingularTransform:
    case ErrorCode::InfiniteDistance:
    case ErrorCode::SingularIntermediate:
    case ErrorCode::VerificationFailed:
    case ErrorCode::PrecopulaCheckFailed:
    case ErrorCode::NotPrecopula:
      return kExitNumerical;
  }
  return kExitNumerical;
}

int cmd_copula(const CopulaCommand& c) {
  return guarded("copula", [&] {
    const std::string text = read_file(c.input_path);
    const DensityMatrix rho = density_from_json(parse_json(text, c.input_path));
    const SolverConfig cfg = effective_config(c.config_path, c.overrides);

    const auto start = std::chrono::steady_clock::now();
    const CopulaResult res = copula_of(rho, cfg);
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    json result{{"marginal_residual", res.marginal_residual},
                {"iterations", res.report.iterations},
                {"lambda", res.report.lambda},
                {"converged", res.report.converged},
                {"final_step", res.report.final_step},
                {"regularized", res.regularized}};
    if (res.regularized) result["reg_eps"] = res.reg_eps;

    json report{{"input_digest", sha256_digest(text)},
                {"result", result},
                {"verdicts", {{"input", verdict_to_json(ppt_verdict(rho))}, {"copula", verdict_to_json(ppt_verdict(res.chi))}}},
                {"config", config_to_json(cfg)}};
    if (c.timing) report["timing_ms"] = elapsed;

    const json doc{{"chi", density_to_json(res.chi)},
                   {"psi0", complex_matrix_to_json(res.scalers.psi0)},
                   {"psi1", complex_matrix_to_json(res.scalers.psi1)},
                   {"report", report}};
    write_output(c.output_path, dump_json(doc));
    return static_cast<int>(kExitOk);
  });
}

int cmd_experiment(const ExperimentCommand& c) {
  if (!is_known_suite(c.suite)) {
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    std::cerr << "qcopula experiment: unknown suite \"" << c.suite << "\" (known: " << known << ")\n";
    return kExitUnknownSuite;
  }
  return guarded("experiment", [&] {
    if (c.count < 1) throw Error(ErrorCode::InvalidArgument, "--count must be at least 1");
    if (c.dim_a < 1 || c.dim_b < 1 || c.dim_a * c.dim_b > 36)
      throw Error(ErrorCode::InvalidArgument, "dims must be positive with product at most 36");
    ExperimentOptions opts;
    opts.suite = c.suite;
    opts.seed = c.seed;
    opts.count = c.count;
    opts.dim_a = c.dim_a;
    opts.dim_b = c.dim_b;
    opts.config = effective_config(c.config_path, c.overrides);
    opts.threads = threads_from_env();
    const json doc = run_suite(opts);
    write_output(c.output_path, dump_json(doc));
    return static_cast<int>(doc.at("all_passed").get<bool>() ? kExitOk : kExitCasesFailed);
  });
}

int cmd_classical(const ClassicalCommand& c) {
  return guarded("classical", [&] {
    const json in = parse_json(read_file(c.input_path), c.input_path);
    const json& mat = in.is_object() && in.contains("matrix") ? in.at("matrix") : in;
    const RMatrix a = real_matrix_from_json(mat, "matrix");
    const ScalingPair p = sinkhorn_scale(a, c.tol, c.max_iter);
    const json doc{{"d1", real_vector_to_json(p.d1)},
                   {"d2", real_vector_to_json(p.d2)},
                   {"scaled", real_matrix_to_json(p.scaled)},
                   {"iterations", p.iterations},
                   {"defect", doubly_stochastic_defect(p.scaled)}};
    write_output(c.output_path, dump_json(doc));
    return static_cast<int>(kExitOk);
  });
}

}  // namespace qcopula::cli
