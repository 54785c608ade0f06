#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "searchgame/core.hpp"
#include "searchgame/gittins.hpp"

namespace searchgame {

struct ValueInterval {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Conditional expected times to detection (V_1,...,V_n): exact values for
/// cyclic realizations, certified enclosing intervals for truncated ones.
struct DetectionProfile {
  enum class Mode { exact, certified };

  Mode mode = Mode::exact;
  std::vector<ValueInterval> values;

  static DetectionProfile exact(std::vector<double> v);
  static DetectionProfile certified(std::vector<ValueInterval> v);
  std::vector<double> midpoints() const;
  int size() const { return static_cast<int>(values.size()); }
};

/// Truncation-tail machinery: no Gittins sequence lets more than time m_hat
/// pass between successive searches of any box.
struct TruncationBound {
  long long m = 1;
  double m_hat = 0.0;
};

TruncationBound truncation_bound(const ProblemInstance& instance);

/// Exact per-box expected detection times for a realization with a verified
/// cycle, via the geometric closed form. No truncation error.
DetectionProfile expected_detection_cyclic(const ProblemInstance& instance,
                                           const SequenceRealization& realization);

/// Co-generates a truncated Gittins sequence against p and certifies each V_i
/// to within ratio_tol relative width (tail bound over partial sum).
std::pair<SequenceRealization, DetectionProfile> expected_detection_acyclic(
    const ProblemInstance& instance, const HidingStrategy& p,
    const Permutation& tie_break, double ratio_tol = 1e-10,
    long long max_searches = 1'000'000);

/// Valuates an existing realization: exact when it carries a cycle, certified
/// intervals from its truncated schedule otherwise.
DetectionProfile detection_profile(const ProblemInstance& instance,
                                   const SequenceRealization& realization);

/// sum_i p_i V_i, with interval arithmetic when the profile is certified.
ValueInterval expected_time_under_hiding(const HidingStrategy& p,
                                         const DetectionProfile& profile);

/// Componentwise convex combination of profiles; certified if any input is.
DetectionProfile evaluate_mixture(const std::vector<double>& weights,
                                  const std::vector<DetectionProfile>& profiles);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Simulates detections along the realization with the hider fixed in one
/// box. Deterministic given seed; per-trial streams are derived from
/// (seed, trial). Trials outliving the materialized schedule extend it by the
/// cycle (exact) or by the m_hat spacing bound (certified tail).
MonteCarloEstimate monte_carlo_oracle(const ProblemInstance& instance,
                                      int hider_box,
                                      const SequenceRealization& realization,
                                      long long trials, std::uint64_t seed);

}  // namespace searchgame
