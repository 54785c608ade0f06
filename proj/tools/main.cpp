#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "searchgame/experiments.hpp"
#include "searchgame/io.hpp"

namespace sg = searchgame;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw sg::Error("cannot open output file: " + out_path);
  out << text;
}

sg::HidingStrategy strategy_or_p0(const std::vector<double>& p,
                                  const sg::ProblemInstance& instance) {
  if (p.empty()) return sg::compute_p0(instance);
  sg::check_probability_vector(p);
  return sg::HidingStrategy{p};
}

sg::Permutation sigma_or_identity(const std::vector<int>& order, int n) {
  if (order.empty()) return sg::Permutation::identity(n);
  sg::Permutation sigma{order};
  if (!sigma.valid(n)) throw sg::Error("--sigma must be a permutation of 1.." + std::to_string(n));
  return sigma;
}

struct SolverOpts {
  double eps = 1e-6;
  int max_iter = 150;
  double beta = 0.7;
  long long cap = 720;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps", eps, "relative gap tolerance");
    cmd->add_option("--max-iter", max_iter, "iteration limit");
    cmd->add_option("--beta", beta, "interior restoration scaler in (0,1)");
    cmd->add_option("--cap", cap, "permutation enumeration cap");
  }

  sg::SolverConfig config() const {
    sg::SolverConfig cfg;
    cfg.eps = eps;
    cfg.max_iter = max_iter;
    cfg.beta = beta;
    cfg.permutation_cap = cap;
    cfg.check();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver toolkit for the hide-and-search game with overlooks"};
  app.require_subcommand(1);

  std::string instance_path, out_path;
  std::vector<double> p_opt;
  std::vector<int> sigma_opt;
  SolverOpts opts;
  std::string scheme_name = "varied";
  int n_boxes = 2, count = 100, jobs = 1, hider_box = 1;
  long long trials = 100000;
  std::uint64_t seed = 1;
  bool cyclic = false;
  double ruckle_q = 0.5;

  auto* solve = app.add_subcommand("solve", "bound the game value and compute both strategies");
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--out", out_path, "output path (default stdout)");
  opts.attach(solve);

  auto* testp0 = app.add_subcommand("test-p0", "test optimality of the index-tying hiding strategy");
  testp0->add_option("--instance", instance_path)->required();
  testp0->add_option("--out", out_path);
  opts.attach(testp0);

  auto* value = app.add_subcommand("value", "evaluate a hiding strategy and dump its Gittins counter");
  value->add_option("--instance", instance_path)->required();
  value->add_option("--p", p_opt, "hiding probabilities (default p0)")->delimiter(',');
  value->add_option("--sigma", sigma_opt, "tie-break ordering (default 1..n)")->delimiter(',');
  value->add_option("--out", out_path);

  auto* ruckle = app.add_subcommand("ruckle", "closed form for the t1=t2=q2=1 two-box game");
  ruckle->add_option("--q", ruckle_q, "box-1 detection probability")->required();
  ruckle->add_option("--out", out_path);

  auto* study = app.add_subcommand("study", "seeded batch study of p0 quality (CSV)");
  study->add_option("--scheme", scheme_name, "varied|low|medium|high");
  study->add_option("--n", n_boxes, "boxes per instance");
  study->add_option("--count", count, "number of instances");
  study->add_flag("--cyclic", cyclic, "draw cyclic instances (default acyclic)");
  study->add_option("--seed", seed, "master seed");
  study->add_option("--jobs", jobs, "parallel workers");
  study->add_option("--out", out_path);
  opts.attach(study);

  auto* scatter = app.add_subcommand("scatter", "two-box future-benefit scatter rows (CSV)");
  scatter->add_option("--count", count, "number of instances");
  scatter->add_option("--seed", seed, "master seed");
  scatter->add_option("--jobs", jobs, "parallel workers");
  scatter->add_option("--out", out_path);
  opts.attach(scatter);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo detection-time estimate");
  simulate->add_option("--instance", instance_path)->required();
  simulate->add_option("--box", hider_box, "hider's box label")->required();
  simulate->add_option("--p", p_opt, "strategy the sequence counters (default p0)")->delimiter(',');
  simulate->add_option("--sigma", sigma_opt, "tie-break ordering")->delimiter(',');
  simulate->add_option("--trials", trials, "trial count");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*solve) {
      sg::ProblemInstance instance = sg::load_instance(instance_path);
      sg::SolverConfig cfg = opts.config();
      sg::GameSolution sol = sg::run_algorithm1(instance, cfg);
      sg::OutJson j = sg::solution_json(sol);
      j["certificate"] = sg::verification_json(
          sg::verify_solution(instance, sol, 10.0 * cfg.eps));
      emit(sg::dump_json(j) + "\n", out_path);
    } else if (*testp0) {
      sg::ProblemInstance instance = sg::load_instance(instance_path);
      sg::HidingStrategy p0 = sg::compute_p0(instance);
      sg::OptimalityTest test = sg::test_hiding_optimality(instance, p0, opts.config());
      sg::OutJson j = sg::optimality_json(test);
      j["p0"] = p0.probs;
      emit(sg::dump_json(j) + "\n", out_path);
    } else if (*value) {
      sg::ProblemInstance instance = sg::load_instance(instance_path);
      sg::HidingStrategy p = strategy_or_p0(p_opt, instance);
      sg::Permutation sigma = sigma_or_identity(sigma_opt, instance.size());
      sg::SequenceRealization r = sg::generate_sequence(instance, p, sigma);
      sg::DetectionProfile profile = sg::detection_profile(instance, r);
      sg::ValueInterval v = sg::expected_time_under_hiding(p, profile);
      sg::OutJson j;
      j["p"] = p.probs;
      j["sequence"] = sg::realization_json(r);
      j["profile"] = sg::profile_json(profile);
      j["expected_time"] = {{"lo", v.lo}, {"hi", v.hi}, {"mid", v.mid()}};
      emit(sg::dump_json(j) + "\n", out_path);
    } else if (*ruckle) {
      emit(sg::dump_json(sg::ruckle_json(sg::ruckle_h(ruckle_q))) + "\n", out_path);
    } else if (*study) {
      sg::StudyResult result = sg::run_scheme_study(
          sg::SampleScheme::named(scheme_name), n_boxes, count, cyclic,
          opts.config(), seed, jobs);
      std::ostringstream csv;
      sg::write_study_csv(csv, result.records);
      emit(csv.str(), out_path);
      sg::OutJson s;
      s["count"] = result.summary.count;
      s["failures"] = result.summary.failures;
      s["mean_subopt_pct"] = result.summary.mean_subopt_pct;
      s["pct75"] = result.summary.pct75;
      s["pct95"] = result.summary.pct95;
      s["pct99"] = result.summary.pct99;
      s["pct_p0_optimal"] = result.summary.pct_p0_optimal;
      std::cerr << sg::dump_json(s) << "\n";
    } else if (*scatter) {
      std::vector<sg::ScatterRow> rows =
          sg::future_benefit_scatter(count, opts.config(), seed, jobs);
      std::ostringstream csv;
      sg::write_scatter_csv(csv, rows);
      emit(csv.str(), out_path);
    } else if (*simulate) {
      sg::ProblemInstance instance = sg::load_instance(instance_path);
      sg::HidingStrategy p = strategy_or_p0(p_opt, instance);
      sg::Permutation sigma = sigma_or_identity(sigma_opt, instance.size());
      sg::SequenceRealization r = sg::generate_sequence(instance, p, sigma);
      sg::MonteCarloEstimate est =
          sg::monte_carlo_oracle(instance, hider_box, r, trials, seed);
      sg::OutJson j;
      j["box"] = hider_box;
      j["trials"] = trials;
      j["seed"] = seed;
      j["mean"] = est.mean;
      j["std_error"] = est.std_error;
      j["sequence"] = sg::realization_json(r);
      emit(sg::dump_json(j) + "\n", out_path);
    }
  } catch (const sg::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const sg::CycleNotFound& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const sg::BudgetExceeded& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
