#include "searchgame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace searchgame {

void SolverConfig::check() const {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  if (max_iter < 1) throw Error("max_iter must be at least 1");
  if (!(beta > 0.0 && beta < 1.0)) throw Error("beta must lie in (0,1)");
  if (!(interior_threshold > 0.0)) throw Error("interior threshold must be positive");
  if (permutation_cap < 1) throw Error("permutation cap must be at least 1");
}

HidingStrategy compute_p0(const ProblemInstance& instance) {
  HidingStrategy p;
  p.probs.resize(instance.boxes.size());
  double sum = 0.0;
  for (size_t i = 0; i < instance.boxes.size(); ++i) {
    p.probs[i] = instance.boxes[i].t / instance.boxes[i].q;
    sum += p.probs[i];
  }
  for (double& v : p.probs) v /= sum;
  return p;
}

namespace {

GenerationLimits limits_of(const SolverConfig& cfg) {
  GenerationLimits lim;
  lim.max_searches = cfg.max_searches;
  lim.ratio_tol = cfg.ratio_tol;
  return lim;
}

HidingStrategy clamp_to_simplex(std::vector<double> v) {
  double sum = 0.0;
  for (double& x : v) {
    if (!(x > 0.0)) x = 0.0;
    sum += x;
  }
  if (!(sum > 0.0)) throw NumericalFailure("strategy collapsed to zero mass");
  for (double& x : v) x /= sum;
  return HidingStrategy{std::move(v)};
}

std::vector<std::vector<double>> payoff_matrix(
    const std::vector<DetectionProfile>& profiles, int n) {
  std::vector<std::vector<double>> a(n, std::vector<double>(profiles.size()));
  for (size_t j = 0; j < profiles.size(); ++j) {
    std::vector<double> mid = profiles[j].midpoints();
    for (int i = 0; i < n; ++i) a[i][j] = mid[i];
  }
  return a;
}

std::vector<WeightedSequence> collect_support(
    const std::vector<double>& weights, const std::vector<SequenceRealization>& d) {
  std::vector<WeightedSequence> support;
  for (size_t j = 0; j < d.size(); ++j) {
    if (weights[j] > 1e-12) support.push_back({weights[j], d[j]});
  }
  return support;
}

bool append_if_novel(std::vector<SequenceRealization>& d, SequenceRealization r) {
  for (const auto& existing : d) {
    if (same_sequence(existing, r)) return false;
  }
  d.push_back(std::move(r));
  return true;
}

}  // namespace

OptimalityTest test_hiding_optimality(const ProblemInstance& instance,
                                      const HidingStrategy& p,
                                      const SolverConfig& config) {
  config.check();
  if (p.size() != instance.size()) {
    throw DimensionMismatch("hiding strategy length mismatch");
  }
  check_probability_vector(p.probs);

  OptimalityTest out;
  if (!p.interior(config.interior_threshold)) {
    // optimal hiding strategies hide everywhere with positive probability
    out.verdict = OptimalityTest::Verdict::not_optimal;
    out.v_p = std::numeric_limits<double>::infinity();
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.reason = "exterior hiding strategy";
    return out;
  }

  std::vector<SequenceRealization> d;
  try {
    d = enumerate_constant_tiebreak_sequences(instance, p, config.permutation_cap,
                                              limits_of(config));
  } catch (const CapExceeded& e) {
    out.verdict = OptimalityTest::Verdict::inconclusive;
    out.reason = e.what();
    return out;
  }

  std::vector<DetectionProfile> profiles;
  profiles.reserve(d.size());
  for (const auto& r : d) profiles.push_back(detection_profile(instance, r));

  MatrixGameSolution game = solve_zero_sum(payoff_matrix(profiles, instance.size()));
  out.value = game.value;
  out.v_p = expected_time_under_hiding(p, profiles.front()).mid();

  if (std::fabs(out.v_p - game.value) / game.value < config.eps) {
    out.verdict = OptimalityTest::Verdict::optimal;
    out.searcher = collect_support(game.col_strategy, d);
  } else {
    out.verdict = OptimalityTest::Verdict::not_optimal;
  }
  return out;
}

HidingStrategy restore_interior(const ProblemInstance& instance,
                                std::vector<SequenceRealization>& d,
                                const HidingStrategy& p,
                                const HidingStrategy& p_d,
                                const SolverConfig& config) {
  const int n = instance.size();
  if (p.size() != n || p_d.size() != n) {
    throw DimensionMismatch("strategy length mismatch");
  }
  if (p_d.interior(config.interior_threshold)) {
    throw NotExterior("subgame hiding strategy is already interior");
  }

  double alpha = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p_d.probs[i] < config.interior_threshold) alpha += p.probs[i];
  }
  std::vector<double> blend(n);
  for (int i = 0; i < n; ++i) {
    blend[i] = p_d.probs[i] < config.interior_threshold
                   ? config.beta * p.probs[i]
                   : p_d.probs[i] * (1.0 - config.beta * alpha);
  }
  HidingStrategy p_bar = clamp_to_simplex(std::move(blend));

  append_if_novel(d, generate_sequence(instance, p_bar, Permutation::identity(n),
                                       limits_of(config)));
  return p_bar;
}

GameSolution run_algorithm1(const ProblemInstance& instance,
                            const SolverConfig& config) {
  config.check();
  const int n = instance.size();
  const GenerationLimits lim = limits_of(config);

  HidingStrategy p = compute_p0(instance);
  std::vector<SequenceRealization> d;
  std::vector<DetectionProfile> profiles;
  auto sync_profiles = [&] {
    while (profiles.size() < d.size()) {
      profiles.push_back(detection_profile(instance, d[profiles.size()]));
    }
  };

  for (int s = 0; s < n; ++s) {
    append_if_novel(d, generate_sequence(instance, p, Permutation::cyclic_shift(n, s), lim));
  }
  sync_profiles();

  GameSolution out;
  out.lower = 0.0;
  out.upper = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    MatrixGameSolution game = solve_zero_sum(payoff_matrix(profiles, n));
    HidingStrategy p_d = clamp_to_simplex(game.row_strategy);

    int restore_rounds = 0;
    while (!p_d.interior(config.interior_threshold)) {
      if (++restore_rounds > 200) {
        throw NumericalFailure("interior restoration failed to converge");
      }
      p = restore_interior(instance, d, p, p_d, config);
      sync_profiles();
      game = solve_zero_sum(payoff_matrix(profiles, n));
      p_d = clamp_to_simplex(game.row_strategy);
    }
    p = p_d;

    out.upper = game.value;
    SequenceRealization counter = generate_sequence(instance, p, Permutation::identity(n), lim);
    DetectionProfile counter_profile = detection_profile(instance, counter);
    out.lower = std::max(out.lower, expected_time_under_hiding(p, counter_profile).mid());

    out.trace.push_back({iter, (int)d.size(), out.lower, out.upper});
    out.hider = p;
    out.searcher = collect_support(game.col_strategy, d);

    if (out.upper / out.lower - 1.0 < config.eps) {
      out.termination = GameSolution::Termination::gap_met;
      return out;
    }
    if (iter == config.max_iter) break;

    bool appended = append_if_novel(d, std::move(counter));
    if (!appended) {
      // a duplicate counter signals convergence up to round-off; retry under
      // shifted tie-breaks, then settle for the bounds in hand
      for (int s = 1; s < n && !appended; ++s) {
        appended = append_if_novel(
            d, generate_sequence(instance, p, Permutation::cyclic_shift(n, s), lim));
      }
      if (!appended) break;
    }
    sync_profiles();
  }

  out.termination = GameSolution::Termination::iter_limit;
  return out;
}

VerificationReport verify_solution(const ProblemInstance& instance,
                                   const GameSolution& solution, double tol) {
  VerificationReport report;
  report.value = solution.upper;

  std::vector<double> weights;
  std::vector<DetectionProfile> profiles;
  for (const auto& ws : solution.searcher) {
    weights.push_back(ws.weight);
    profiles.push_back(detection_profile(instance, ws.sequence));
    report.max_index_gap = std::max(
        report.max_index_gap,
        max_index_slack(instance, solution.hider, ws.sequence));
  }
  report.counters_ok = !solution.searcher.empty() && report.max_index_gap <= tol;

  if (!profiles.empty()) {
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    for (double& w : weights) w /= wsum;
    DetectionProfile mixed = evaluate_mixture(weights, profiles);
    std::vector<double> mid = mixed.midpoints();
    auto [mn, mx] = std::minmax_element(mid.begin(), mid.end());
    report.value_spread = *mx - *mn;
    report.equalized_ok = report.value_spread <= tol * report.value;
  }
  return report;
}

RuckleSolution ruckle_h(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error("q must lie strictly inside (0,1)");

  // h_bar - 1/q - (1-q)^{h_bar-1} is increasing in h_bar with a root inside
  // (1/q, 1/q + 1); bisect it down to the residual target.
  auto f = [&](double h) { return 1.0 / q + std::pow(1.0 - q, h - 1.0); };
  double lo = 1.0 / q;
  double hi = 1.0 / q + 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid - f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * hi) break;
  }
  RuckleSolution sol;
  sol.q = q;
  sol.h_bar = 0.5 * (lo + hi);
  sol.residual = std::fabs(sol.h_bar - f(sol.h_bar));
  sol.h = (long long)std::floor(sol.h_bar);
  sol.p_star = (1.0 / q) / (1.0 / q + std::pow(1.0 - q, (double)sol.h - 1.0));
  return sol;
}

}  // namespace searchgame
