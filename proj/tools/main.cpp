#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcopula_cli/commands.hpp"

namespace {

void add_solver_flags(CLI::App* sub, qcopula::cli::ConfigOverrides& o, bool& regularize) {
  sub->add_option("--tol", o.tol, "Fixed-point stopping threshold in the Hilbert metric");
  sub->add_option("--max-iter", o.max_iter, "Iteration cap");
  sub->add_flag("--regularize", regularize, "Mix in eps * I/(nm) before solving");
  sub->add_option("--reg-eps", o.reg_eps, "Regularization weight");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qcopula::cli;

  CLI::App app{"qcopula: quantum copulas via operator Sinkhorn scaling"};
  app.require_subcommand(1);

  CopulaCommand copula;
  bool copula_reg = false;
  bool no_timing = false;
  auto* sc = app.add_subcommand("copula", "Compute the copula of a bipartite state file");
  sc->add_option("input", copula.input_path, "Density-matrix JSON file")->required();
  sc->add_option("--config", copula.config_path, "Solver config JSON file");
  sc->add_option("-o,--output", copula.output_path, "Output file (default stdout)");
  sc->add_flag("--no-timing", no_timing, "Omit wall-clock timing from the report");
  add_solver_flags(sc, copula.overrides, copula_reg);

  ExperimentCommand exp;
  bool exp_reg = false;
  std::vector<int> dims;
  auto* se = app.add_subcommand("experiment", "Run a property suite");
  se->add_option("suite", exp.suite, "preserve-separability | uniqueness | convergence | lambda | metric-axioms")
      ->required();
  se->add_option("--seed", exp.seed, "Base seed; case i uses seed + i");
  se->add_option("--count", exp.count, "Number of cases");
  se->add_option("--dims", dims, "Subsystem dimensions n m")->expected(2);
  se->add_option("--config", exp.config_path, "Solver config JSON file");
  se->add_option("-o,--output", exp.output_path, "Output file (default stdout)");
  add_solver_flags(se, exp.overrides, exp_reg);

  ClassicalCommand cls;
  auto* sk = app.add_subcommand("classical", "Sinkhorn-scale a positive square matrix");
  sk->add_option("input", cls.input_path, "Matrix JSON file")->required();
  sk->add_option("-o,--output", cls.output_path, "Output file (default stdout)");
  sk->add_option("--tol", cls.tol, "Row/column sum tolerance");
  sk->add_option("--max-iter", cls.max_iter, "Iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (sc->parsed()) {
    if (copula_reg) copula.overrides.regularize = true;
    copula.timing = !no_timing;
    return cmd_copula(copula);
  }
  if (se->parsed()) {
    if (exp_reg) exp.overrides.regularize = true;
    if (dims.size() == 2) {
      exp.dim_a = dims[0];
      exp.dim_b = dims[1];
    }
    return cmd_experiment(exp);
  }
  return cmd_classical(cls);
}
