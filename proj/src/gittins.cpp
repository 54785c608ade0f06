#include "searchgame/gittins.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "searchgame/valuation.hpp"

namespace searchgame {

Permutation Permutation::identity(int n) {
  Permutation s;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 1);
  return s;
}

Permutation Permutation::cyclic_shift(int n, int shift) {
  Permutation s;
  s.order.resize(n);
  for (int i = 0; i < n; ++i) s.order[i] = (i + shift) % n + 1;
  return s;
}

bool Permutation::valid(int n) const {
  if ((int)order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int label : order) {
    if (label < 1 || label > n || seen[label - 1]) return false;
    seen[label - 1] = true;
  }
  return true;
}

bool same_sequence(const SequenceRealization& a, const SequenceRealization& b) {
  return a.prefix == b.prefix && a.cycle == b.cycle;
}

double gittins_index(double p_i, const BoxSpec& box, long long m_i) {
  return p_i * std::pow(1.0 - box.q, (double)m_i) * box.q / box.t;
}

namespace {

constexpr double p0_recognition_rel_tol = 1e-12;

std::vector<double> tie_inducing_strategy(const ProblemInstance& inst) {
  std::vector<double> p(inst.boxes.size());
  double sum = 0.0;
  for (size_t i = 0; i < inst.boxes.size(); ++i) {
    p[i] = inst.boxes[i].t / inst.boxes[i].q;
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

bool matches_tie_strategy(const HidingStrategy& p, const ProblemInstance& inst) {
  std::vector<double> p0 = tie_inducing_strategy(inst);
  for (size_t i = 0; i < p0.size(); ++i) {
    if (std::fabs(p.probs[i] - p0[i]) > p0_recognition_rel_tol * p0[i]) return false;
  }
  return true;
}

enum class IndexRule {
  integer_cyclic,  // exact count/exponent comparison (cyclic instance at p0)
  p0_initial,      // unsearched boxes first, floats afterwards
  plain_float,
};

IndexRule rule_for(const ProblemInstance& inst, const HidingStrategy& p) {
  if (!matches_tie_strategy(p, inst)) return IndexRule::plain_float;
  return inst.cyclicity == Cyclicity::cyclic ? IndexRule::integer_cyclic
                                             : IndexRule::p0_initial;
}

std::vector<int> preference_ranks(const Permutation& sigma, int n) {
  std::vector<int> rank(n, 0);
  for (int pos = 0; pos < n; ++pos) rank[sigma.order[pos] - 1] = pos;
  return rank;
}

// Picks the next box under the active rule. survivals[i] must equal
// std::pow(1 - q_i, counts[i]) so stateless and generated comparisons see
// bit-identical indices.
int choose_next(const ProblemInstance& inst, const HidingStrategy& p,
                IndexRule rule, const std::vector<int>& rank,
                const std::vector<long long>& counts,
                const std::vector<double>& survivals) {
  const int n = inst.size();

  if (rule == IndexRule::integer_cyclic) {
    // smaller m_i/x_i wins, by cross-multiplication; m = 0 ranks first
    const auto& x = inst.cycle->exponents;
    int best = 0;
    for (int i = 1; i < n; ++i) {
      long long lhs = counts[i] * x[best];
      long long rhs = counts[best] * x[i];
      if (lhs < rhs || (lhs == rhs && rank[i] < rank[best])) best = i;
    }
    return best + 1;
  }

  if (rule == IndexRule::p0_initial) {
    // the initial n-way tie is structural; unsearched boxes follow sigma
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (counts[i] == 0 && (best < 0 || rank[i] < rank[best])) best = i;
    }
    if (best >= 0) return best + 1;
  }

  int best = 0;
  double best_idx = p.probs[0] * survivals[0] * inst.boxes[0].q / inst.boxes[0].t;
  for (int i = 1; i < n; ++i) {
    double idx = p.probs[i] * survivals[i] * inst.boxes[i].q / inst.boxes[i].t;
    if (idx > best_idx || (idx == best_idx && rank[i] < rank[best])) {
      best = i;
      best_idx = idx;
    }
  }
  return best + 1;
}

// Survival factors (1-q)^m, memoized per box. Every entry comes from the same
// std::pow call a stateless recomputation would make.
struct SurvivalTable {
  std::vector<std::vector<double>> pows;

  explicit SurvivalTable(const ProblemInstance& inst) : pows(inst.boxes.size()) {
    for (auto& v : pows) v.push_back(1.0);
  }

  double get(const ProblemInstance& inst, int i, long long m) {
    auto& v = pows[i];
    while ((long long)v.size() <= m) {
      v.push_back(std::pow(1.0 - inst.boxes[i].q, (double)v.size()));
    }
    return v[m];
  }
};

void check_generation_inputs(const ProblemInstance& inst, const HidingStrategy& p,
                             const Permutation& sigma) {
  const int n = inst.size();
  if (p.size() != n) throw DimensionMismatch("hiding strategy length mismatch");
  check_probability_vector(p.probs);
  for (int i = 0; i < n; ++i) {
    if (!(p.probs[i] > 0.0)) {
      throw ExteriorHidingStrategy("box " + std::to_string(i + 1) +
                                   " is never searched under this strategy");
    }
  }
  if (!sigma.valid(n)) throw Error("tie-break is not a permutation of box labels");
}

}  // namespace

int next_box(const SearchState& state, const HidingStrategy& p,
             const ProblemInstance& instance, const Permutation& tie_break) {
  const int n = instance.size();
  std::vector<int> rank = preference_ranks(tie_break, n);
  std::vector<double> survivals(n);
  for (int i = 0; i < n; ++i) {
    survivals[i] = std::pow(1.0 - instance.boxes[i].q, (double)state.counts[i]);
  }
  return choose_next(instance, p, rule_for(instance, p), rank, state.counts,
                     survivals);
}

SequenceRealization generate_sequence(const ProblemInstance& instance,
                                      const HidingStrategy& p,
                                      const Permutation& tie_break,
                                      const GenerationLimits& limits) {
  check_generation_inputs(instance, p, tie_break);
  const int n = instance.size();
  const IndexRule rule = rule_for(instance, p);
  const std::vector<int> rank = preference_ranks(tie_break, n);
  const bool cyclic = instance.cyclicity == Cyclicity::cyclic;

  SequenceRealization out;
  out.generated_against = p;
  out.tie_break = tie_break;
  out.schedule.resize(n);

  SurvivalTable survival(instance);
  std::vector<long long> counts(n, 0);
  std::vector<double> surv_now(n, 1.0);
  std::vector<int> labels;
  double elapsed = 0.0;

  // cyclic cycle detection: sliding window over the last x_hat searches
  const long long xhat = cyclic ? instance.cycle->cycle_length_searches : 0;
  std::vector<long long> window_counts(n, 0);
  int boxes_matching = 0;
  auto window_adjust = [&](int pos, long long delta) {
    long long x = instance.cycle->exponents[pos];
    if (window_counts[pos] == x) --boxes_matching;
    window_counts[pos] += delta;
    if (window_counts[pos] == x) ++boxes_matching;
  };

  // truncation stop rule state
  const double m_hat = cyclic ? 0.0 : truncation_bound(instance).m_hat;
  std::vector<double> lower(n, 0.0);
  std::vector<double> last_time(n, 0.0);

  for (long long step = 1; step <= limits.max_searches; ++step) {
    const int label = choose_next(instance, p, rule, rank, counts, surv_now);
    const int pos = label - 1;
    const BoxSpec& box = instance.boxes[pos];

    if (!cyclic) {
      lower[pos] += surv_now[pos] * (elapsed + box.t - last_time[pos]);
      last_time[pos] = elapsed + box.t;
    }

    labels.push_back(label);
    counts[pos] += 1;
    surv_now[pos] = survival.get(instance, pos, counts[pos]);
    elapsed += box.t;
    out.schedule[pos].push_back(elapsed);

    if (cyclic) {
      window_adjust(pos, +1);
      if (step > xhat) window_adjust(labels[step - 1 - xhat] - 1, -1);
      if (step >= xhat && boxes_matching == n) {
        out.prefix.assign(labels.begin(), labels.end() - xhat);
        out.cycle.assign(labels.end() - xhat, labels.end());
        // schedule spans prefix + first cycle exactly
        return out;
      }
    } else {
      bool done = true;
      for (int i = 0; i < n && done; ++i) {
        if (counts[i] == 0) {
          done = false;
        } else if (instance.boxes[i].q < 1.0) {
          double tail = m_hat * surv_now[i] / instance.boxes[i].q;
          done = tail < limits.ratio_tol * lower[i];
        }
      }
      if (done) {
        out.prefix = std::move(labels);
        out.truncated_at = step;
        return out;
      }
    }
  }

  if (cyclic) {
    throw CycleNotFound("no repeating cycle within " +
                        std::to_string(limits.max_searches) +
                        " searches; instance data may be inconsistent");
  }
  throw BudgetExceeded("truncation stop rule unmet after " +
                       std::to_string(limits.max_searches) + " searches");
}

std::vector<SequenceRealization> enumerate_constant_tiebreak_sequences(
    const ProblemInstance& instance, const HidingStrategy& p, long long cap,
    const GenerationLimits& limits) {
  const int n = instance.size();
  long long fact = 1;
  for (int i = 2; i <= n && fact <= cap; ++i) fact *= i;
  if (fact > cap) {
    throw CapExceeded(std::to_string(n) + "! exceeds the permutation cap " +
                      std::to_string(cap));
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::vector<SequenceRealization> result;
  do {
    SequenceRealization r = generate_sequence(instance, p, Permutation{order}, limits);
    bool duplicate = false;
    for (const auto& existing : result) {
      if (same_sequence(existing, r)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) result.push_back(std::move(r));
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

double max_index_slack(const ProblemInstance& instance, const HidingStrategy& p,
                       const SequenceRealization& realization) {
  const int n = instance.size();
  std::vector<long long> counts(n, 0);
  double worst = 0.0;

  auto visit = [&](int label) {
    double mx = 0.0;
    for (int i = 0; i < n; ++i) {
      mx = std::max(mx, gittins_index(p.probs[i], instance.boxes[i], counts[i]));
    }
    double chosen =
        gittins_index(p.probs[label - 1], instance.boxes[label - 1], counts[label - 1]);
    if (mx > 0.0) worst = std::max(worst, (mx - chosen) / mx);
    counts[label - 1] += 1;
  };

  for (int label : realization.prefix) visit(label);
  for (int label : realization.cycle) visit(label);
  return worst;
}

}  // namespace searchgame
