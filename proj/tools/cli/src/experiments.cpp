#include "qcopula_cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <thread>

#include "qcopula/error.hpp"
#include "qcopula/pmetric.hpp"
#include "qcopula/states.hpp"

namespace qcopula::cli {

namespace {

struct CaseResult {
  bool pass = false;
  std::map<std::string, double> metrics;
  int iterations = -1;
  std::string note;
};

using CaseFn = std::function<CaseResult(const ExperimentOptions&, std::uint64_t)>;

CaseResult preserve_separability_case(const ExperimentOptions& o, std::uint64_t case_seed, bool separable) {
  CaseResult out;
  Rng rng(case_seed);
  std::optional<DensityMatrix> rho;
  if (separable) {
    rho = random_separable_state(o.dim_a, o.dim_b, 2 * o.dim_a * o.dim_b, rng);
  } else {
    for (int draw = 0; draw < 500 && !rho; ++draw) {
      DensityMatrix candidate = random_full_rank_state(o.dim_a, o.dim_b, rng);
      if (ppt_verdict(candidate).tag == Separability::Entangled) rho = std::move(candidate);
    }
    if (!rho) {
      out.note = "no NPT state found in 500 draws";
      return out;
    }
  }
  const CopulaResult res = copula_of(*rho, o.config);
  const SeparabilityVerdict in = ppt_verdict(*rho);
  const SeparabilityVerdict cop = ppt_verdict(res.chi);
  out.pass = in.tag == cop.tag;
  out.metrics["marginal_residual"] = res.marginal_residual;
  out.iterations = res.report.iterations;
  out.note = std::string(to_string(in.tag)) + "->" + std::string(to_string(cop.tag));
  return out;
}

CaseResult uniqueness_case(const ExperimentOptions& o, std::uint64_t case_seed) {
  CaseResult out;
  Rng rng(case_seed);
  const DensityMatrix rho = random_full_rank_state(o.dim_a, o.dim_b, rng);
  const ChoiOperator phi = choi_from_state(rho);
  std::vector<CMatrix> rays;
  for (int k = 0; k < 5; ++k) {
    const FixedPointReport rep =
        fixed_point_iterate(phi, o.config.tol, o.config.max_iter, random_state_matrix(o.dim_a, rng));
    if (!rep.converged) {
      out.note = "initialization " + std::to_string(k) + " did not converge";
      return out;
    }
    rays.push_back(rep.phi_ray);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) worst = std::max(worst, hilbert_distance(rays[i], rays[j]).value());
  out.metrics["max_ray_distance"] = worst;
  out.pass = worst <= 1e-8;
  return out;
}

CaseResult convergence_case(const ExperimentOptions& o, std::uint64_t case_seed) {
  CaseResult out;
  const DensityMatrix rho = random_full_rank_state(o.dim_a, o.dim_b, case_seed);
  const FixedPointReport rep = fixed_point_iterate(choi_from_state(rho), o.config.tol, o.config.max_iter);
  out.iterations = rep.iterations;
  out.metrics["final_step"] = rep.final_step;
  out.pass = rep.converged && rep.iterations < 200;
  return out;
}

CaseResult lambda_case(const ExperimentOptions& o, std::uint64_t case_seed) {
  CaseResult out;
  const DensityMatrix rho = random_full_rank_state(o.dim_a, o.dim_b, case_seed);
  const CopulaResult res = copula_of(rho, o.config);
  const double gap = std::abs(res.report.lambda - static_cast<double>(o.dim_a) / o.dim_b);
  out.metrics["lambda_gap"] = gap;
  out.metrics["marginal_residual"] = res.marginal_residual;
  out.iterations = res.report.iterations;
  out.pass = gap <= 1e-8;
  return out;
}

CaseResult metric_axioms_case(const ExperimentOptions& o, std::uint64_t case_seed) {
  CaseResult out;
  Rng rng(case_seed);
  const int d = o.dim_a * o.dim_b;
  const CMatrix a = random_state_matrix(d, rng);
  const CMatrix b = random_state_matrix(d, rng);
  const CMatrix c = random_state_matrix(d, rng);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  const double scale = std::pow(10.0, expo(rng));

  const double ab = hilbert_distance(a, b).value();
  const double ba = hilbert_distance(b, a).value();
  const double ac = hilbert_distance(a, c).value();
  const double bc = hilbert_distance(b, c).value();
  const double scaled = hilbert_distance(scale * a, b).value();
  const double inverted = hilbert_distance(a.inverse(), b.inverse()).value();

  CMatrix u = ginibre(d, 1, rng);
  CMatrix v = ginibre(d, 1, rng);
  const bool infinite = hilbert_distance(u * u.adjoint(), v * v.adjoint()).is_infinite();

  out.metrics["symmetry_gap"] = std::abs(ab - ba);
  out.metrics["triangle_excess"] = std::max(0.0, ac - ab - bc);
  out.metrics["scale_gap"] = std::abs(scaled - ab);
  out.metrics["inversion_gap"] = std::abs(inverted - ab);
  out.pass = ab == ba && ab >= 0.0 && ac <= ab + bc + 1e-10 && std::abs(scaled - ab) <= 1e-12 &&
             std::abs(inverted - ab) <= 1e-10 && infinite;
  return out;
}

void parallel_for(int count, unsigned threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

json histogram(const std::vector<int>& iterations) {
  constexpr int kWidth = 10;
  std::map<int, int> bins;
  for (int it : iterations) ++bins[it / kWidth];
  json out = json::array();
  for (const auto& [bin, n] : bins) out.push_back(json{{"from", bin * kWidth}, {"to", bin * kWidth + kWidth - 1}, {"count", n}});
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"preserve-separability", "uniqueness", "convergence", "lambda",
                                              "metric-axioms"};
  return names;
}

bool is_known_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

unsigned threads_from_env() {
  const char* env = std::getenv("QCOPULA_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  return (end != env && v > 0) ? static_cast<unsigned>(v) : 0u;
}

json run_suite(const ExperimentOptions& o) {
  if (!is_known_suite(o.suite)) throw Error(ErrorCode::InvalidArgument, "unknown suite \"" + o.suite + "\"");
  if (o.count < 1) throw Error(ErrorCode::InvalidArgument, "count must be at least 1");

  CaseFn fn;
  if (o.suite == "preserve-separability") {
    fn = [](const ExperimentOptions& opts, std::uint64_t s) {
      return preserve_separability_case(opts, s, (s - opts.seed) % 2 == 0);
    };
  } else if (o.suite == "uniqueness") {
    fn = uniqueness_case;
  } else if (o.suite == "convergence") {
    fn = convergence_case;
  } else if (o.suite == "lambda") {
    fn = lambda_case;
  } else {
    fn = metric_axioms_case;
  }

  std::vector<CaseResult> results(static_cast<std::size_t>(o.count));
  parallel_for(o.count, o.threads, [&](int i) {
    CaseResult& r = results[static_cast<std::size_t>(i)];
    try {
      r = fn(o, o.seed + static_cast<std::uint64_t>(i));
    } catch (const std::exception& e) {
      r.pass = false;
      r.note = e.what();
    }
  });

  int passed = 0;
  json failed_cases = json::array();
  std::map<std::string, double> maxima;
  std::vector<int> iterations;
  json notes = json::object();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CaseResult& r = results[i];
    if (r.pass) {
      ++passed;
    } else {
      failed_cases.push_back(json{{"case", i}, {"seed", o.seed + i}, {"note", r.note}});
    }
    for (const auto& [k, v] : r.metrics) maxima[k] = std::max(maxima.count(k) ? maxima[k] : 0.0, v);
    if (r.iterations >= 0) iterations.push_back(r.iterations);
    if (!r.note.empty() && r.pass) notes[r.note] = notes.value(r.note, 0) + 1;
  }

  json doc{{"suite", o.suite},
           {"seed", o.seed},
           {"count", o.count},
           {"dims", json::array({o.dim_a, o.dim_b})},
           {"config", config_to_json(o.config)},
           {"passed", passed},
           {"failed", o.count - passed},
           {"failed_cases", failed_cases},
           {"max", maxima}};
  bool all = passed == o.count;
  if (!iterations.empty()) {
    std::vector<int> sorted = iterations;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                            : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    doc["iterations"] = json{{"median", median}, {"max", sorted.back()}, {"histogram", histogram(iterations)}};
    if (o.suite == "convergence" && !(median < 50.0)) all = false;
  }
  if (!notes.empty()) doc["verdict_transitions"] = notes;
  doc["all_passed"] = all;
  return doc;
}

}  // namespace qcopula::cli
