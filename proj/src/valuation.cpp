#include "searchgame/valuation.hpp"

#include <algorithm>
#include <cmath>

#include "searchgame/rng.hpp"

namespace searchgame {

DetectionProfile DetectionProfile::exact(std::vector<double> v) {
  DetectionProfile p;
  p.mode = Mode::exact;
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw NumericalFailure("detection times must be positive and finite");
    }
    p.values.push_back({x, x});
  }
  return p;
}

DetectionProfile DetectionProfile::certified(std::vector<ValueInterval> v) {
  DetectionProfile p;
  p.mode = Mode::certified;
  for (const ValueInterval& iv : v) {
    if (!(iv.lo > 0.0) || !(iv.hi >= iv.lo) || !std::isfinite(iv.hi)) {
      throw NumericalFailure("certified interval must satisfy 0 < lo <= hi");
    }
  }
  p.values = std::move(v);
  return p;
}

std::vector<double> DetectionProfile::midpoints() const {
  std::vector<double> m;
  m.reserve(values.size());
  for (const ValueInterval& iv : values) m.push_back(iv.mid());
  return m;
}

TruncationBound truncation_bound(const ProblemInstance& instance) {
  // m = floor(max log(1-q_i)/log(1-q_j)) + 1 over boxes with q < 1; a box
  // with q = 1 is searched at most once, so it contributes t once to m_hat.
  // The bump before floor keeps exact integer ratios (cyclic games) on the
  // safe side of the strict inequality the bound needs.
  double max_ratio = 1.0;
  bool any = false;
  for (const BoxSpec& a : instance.boxes) {
    if (a.q >= 1.0) continue;
    for (const BoxSpec& b : instance.boxes) {
      if (b.q >= 1.0) continue;
      any = true;
      max_ratio = std::max(max_ratio, std::log(1.0 - a.q) / std::log(1.0 - b.q));
    }
  }
  TruncationBound tb;
  tb.m = any ? (long long)std::floor(max_ratio + 1e-9) + 1 : 1;
  tb.m_hat = 0.0;
  for (const BoxSpec& b : instance.boxes) {
    tb.m_hat += (b.q < 1.0 ? (double)tb.m : 1.0) * b.t;
  }
  return tb;
}

DetectionProfile expected_detection_cyclic(const ProblemInstance& instance,
                                           const SequenceRealization& realization) {
  if (instance.cyclicity != Cyclicity::cyclic) {
    throw MissingCycle("instance carries no verified cyclic structure");
  }
  if (!realization.has_cycle()) {
    throw MissingCycle("realization has no cycle");
  }
  const int n = instance.size();
  const double cycle_time = instance.cycle->cycle_length_time;

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const BoxSpec& box = instance.boxes[i];
    const auto& b = realization.schedule[i];
    const long long xi = instance.cycle->exponents[i];
    const long long prefix_count = (long long)b.size() - xi;
    if (prefix_count < 0) {
      throw MissingCycle("schedule does not cover prefix plus one cycle");
    }
    const double s = 1.0 - box.q;

    // transient part: every search through the end of the first cycle
    double sum = 0.0;
    double weight = 1.0;
    double prev = 0.0;
    for (long long k = 0; k < prefix_count + xi; ++k) {
      sum += weight * (b[k] - prev);
      prev = b[k];
      weight *= s;
    }

    // periodic part: the gap pattern of the second cycle repeats forever
    double a = 0.0;
    double w = 1.0;
    for (long long k = 1; k <= xi; ++k) {
      double cur = b[prefix_count + k - 1] + cycle_time;
      double before = k == 1 ? b[prefix_count + xi - 1] : b[prefix_count + k - 2] + cycle_time;
      a += w * (cur - before);
      w *= s;
    }
    double decay = std::pow(s, (double)(prefix_count + xi));
    v[i] = sum + decay * a / (1.0 - std::pow(s, (double)xi));
  }
  return DetectionProfile::exact(std::move(v));
}

DetectionProfile detection_profile(const ProblemInstance& instance,
                                   const SequenceRealization& realization) {
  if (realization.has_cycle()) {
    return expected_detection_cyclic(instance, realization);
  }
  const int n = instance.size();
  const double m_hat = truncation_bound(instance).m_hat;
  std::vector<ValueInterval> values(n);
  for (int i = 0; i < n; ++i) {
    const BoxSpec& box = instance.boxes[i];
    const auto& b = realization.schedule[i];
    if (b.empty()) {
      throw Error("realization never searches box " + std::to_string(i + 1) +
                  "; its detection time is unbounded");
    }
    double sum = 0.0;
    double weight = 1.0;
    double prev = 0.0;
    for (double bk : b) {
      sum += weight * (bk - prev);
      prev = bk;
      weight *= 1.0 - box.q;
    }
    double tail = box.q < 1.0 ? m_hat * std::pow(1.0 - box.q, (double)b.size()) / box.q
                              : 0.0;
    values[i] = {sum, sum + tail};
  }
  return DetectionProfile::certified(std::move(values));
}

std::pair<SequenceRealization, DetectionProfile> expected_detection_acyclic(
    const ProblemInstance& instance, const HidingStrategy& p,
    const Permutation& tie_break, double ratio_tol, long long max_searches) {
  // Force truncated generation even on a cyclic instance; the stop rule then
  // certifies the same sequence the cyclic machinery would evaluate exactly.
  ProblemInstance view = instance;
  view.cyclicity = Cyclicity::unclassified;
  view.cycle.reset();
  GenerationLimits limits;
  limits.max_searches = max_searches;
  limits.ratio_tol = ratio_tol;
  SequenceRealization r = generate_sequence(view, p, tie_break, limits);
  DetectionProfile profile = detection_profile(view, r);
  return {std::move(r), std::move(profile)};
}

ValueInterval expected_time_under_hiding(const HidingStrategy& p,
                                         const DetectionProfile& profile) {
  if (p.size() != profile.size()) {
    throw DimensionMismatch("strategy and profile dimensions differ");
  }
  ValueInterval out{0.0, 0.0};
  for (int i = 0; i < p.size(); ++i) {
    out.lo += p.probs[i] * profile.values[i].lo;
    out.hi += p.probs[i] * profile.values[i].hi;
  }
  return out;
}

DetectionProfile evaluate_mixture(const std::vector<double>& weights,
                                  const std::vector<DetectionProfile>& profiles) {
  if (weights.size() != profiles.size() || profiles.empty()) {
    throw DimensionMismatch("one weight per profile required");
  }
  check_probability_vector(weights);
  const int n = profiles.front().size();
  bool certified = false;
  std::vector<ValueInterval> mixed(n, ValueInterval{0.0, 0.0});
  for (size_t j = 0; j < profiles.size(); ++j) {
    if (profiles[j].size() != n) {
      throw DimensionMismatch("profile dimensions differ across mixture");
    }
    certified = certified || profiles[j].mode == DetectionProfile::Mode::certified;
    for (int i = 0; i < n; ++i) {
      mixed[i].lo += weights[j] * profiles[j].values[i].lo;
      mixed[i].hi += weights[j] * profiles[j].values[i].hi;
    }
  }
  DetectionProfile out;
  out.mode = certified ? DetectionProfile::Mode::certified : DetectionProfile::Mode::exact;
  out.values = std::move(mixed);
  return out;
}

MonteCarloEstimate monte_carlo_oracle(const ProblemInstance& instance,
                                      int hider_box,
                                      const SequenceRealization& realization,
                                      long long trials, std::uint64_t seed) {
  if (hider_box < 1 || hider_box > instance.size()) {
    throw DimensionMismatch("hider box label out of range");
  }
  if (trials < 1) throw Error("at least one trial required");
  const BoxSpec& box = instance.boxes[hider_box - 1];
  const auto& times = realization.schedule[hider_box - 1];
  if (times.empty()) {
    throw Error("realization never searches the hider's box");
  }
  const long long k_have = (long long)times.size();

  // Extension past the materialized schedule: periodic for cycles, the m_hat
  // spacing bound for truncated realizations (the residual mass out there is
  // below the certification tail, so the bias is negligible).
  long long per_cycle = 0;
  double cycle_time = 0.0;
  double spacing = 0.0;
  if (realization.has_cycle()) {
    for (int label : realization.cycle) {
      if (label == hider_box) ++per_cycle;
      cycle_time += instance.boxes[label - 1].t;
    }
    if (per_cycle == 0) throw Error("cycle never searches the hider's box");
  } else {
    spacing = truncation_bound(instance).m_hat;
  }

  auto visit_time = [&](long long k) -> double {  // k >= 1
    if (k <= k_have) return times[k - 1];
    if (realization.has_cycle()) {
      long long extra = (k - k_have + per_cycle - 1) / per_cycle;
      return times[k - extra * per_cycle - 1] + (double)extra * cycle_time;
    }
    return times[k_have - 1] + (double)(k - k_have) * spacing;
  };

  double sum = 0.0;
  double sum_sq = 0.0;
  for (long long trial = 0; trial < trials; ++trial) {
    std::uint64_t state = derive_stream(seed, (std::uint64_t)trial);
    long long k = 1;
    while (true) {
      double u = (double)(splitmix64(state) >> 11) * 0x1.0p-53;
      if (u < box.q) break;
      ++k;
    }
    double t = visit_time(k);
    sum += t;
    sum_sq += t * t;
  }
  double mean = sum / (double)trials;
  double var = std::max(0.0, sum_sq / (double)trials - mean * mean);
  return {mean, std::sqrt(var / (double)trials)};
}

}  // namespace searchgame
