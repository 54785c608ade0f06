#pragma once

// Test-side oracles, independent of the library's solution paths.

#include <algorithm>
#include <cmath>
#include <vector>

#include "searchgame/core.hpp"
#include "searchgame/gittins.hpp"
#include "searchgame/rng.hpp"

namespace oracles {

// Exhaustive mixed-strategy grid search for a 2-row zero-sum game
// (rows maximize). Resolution 1e-4 over the row mixture.
inline double two_row_game_value(const std::vector<std::vector<double>>& a) {
  const int m = (int)a[0].size();
  double best = -1e300;
  const int steps = 10000;
  for (int s = 0; s <= steps; ++s) {
    double p = (double)s / steps;
    double worst = 1e300;
    for (int j = 0; j < m; ++j) {
      worst = std::min(worst, p * a[0][j] + (1.0 - p) * a[1][j]);
    }
    best = std::max(best, worst);
  }
  return best;
}

// Partial sums of the detection-time series for a realization, unrolled to K
// searches of one box by cycling (or by m_hat spacing for truncated ones).
inline double partial_sum_oracle(const searchgame::ProblemInstance& inst,
                                 const searchgame::SequenceRealization& r,
                                 int box_label, long long k_terms,
                                 double spacing_for_truncated = 0.0) {
  const auto& times = r.schedule[box_label - 1];
  const searchgame::BoxSpec& box = inst.boxes[box_label - 1];
  long long have = (long long)times.size();

  long long per_cycle = 0;
  double cycle_time = 0.0;
  for (int label : r.cycle) {
    if (label == box_label) ++per_cycle;
    cycle_time += inst.boxes[label - 1].t;
  }

  double sum = 0.0;
  double weight = 1.0;
  double prev = 0.0;
  for (long long k = 1; k <= k_terms; ++k) {
    double bk;
    if (k <= have) {
      bk = times[k - 1];
    } else if (per_cycle > 0) {
      long long extra = (k - have + per_cycle - 1) / per_cycle;
      bk = times[k - extra * per_cycle - 1] + (double)extra * cycle_time;
    } else {
      bk = times[have - 1] + (double)(k - have) * spacing_for_truncated;
    }
    sum += weight * (bk - prev);
    prev = bk;
    weight *= 1.0 - box.q;
  }
  return sum;
}

inline std::vector<double> random_interior_strategy(int n, searchgame::Rng& rng,
                                                    double floor = 0.05) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = floor + rng.uniform();
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace oracles
