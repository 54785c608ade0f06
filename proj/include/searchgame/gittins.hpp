#pragma once

#include <optional>
#include <vector>

#include "searchgame/core.hpp"

namespace searchgame {

/// Preference ordering over box labels; earlier entries are preferred when
/// breaking ties.
struct Permutation {
  std::vector<int> order;  // box labels 1..n, each exactly once

  static Permutation identity(int n);
  static Permutation cyclic_shift(int n, int shift);
  bool valid(int n) const;
};

struct SearchState {
  std::vector<long long> counts;  // completed searches per box position
  double elapsed = 0.0;

  explicit SearchState(int n) : counts(static_cast<size_t>(n), 0) {}
};

struct GenerationLimits {
  long long max_searches = 1'000'000;
  double ratio_tol = 1e-10;  // truncation stop rule for acyclic generation
};

/// A materialized Gittins search sequence: a finite prefix, an optional cycle
/// that repeats indefinitely after it, and the per-box search completion
/// times over prefix + first cycle (or over the truncated prefix).
struct SequenceRealization {
  std::vector<int> prefix;  // box labels
  std::vector<int> cycle;   // empty when the realization is truncated
  std::vector<std::vector<double>> schedule;  // schedule[i][k-1] = b_{i+1}(k)
  std::optional<long long> truncated_at;      // total searches when no cycle
  HidingStrategy generated_against;
  Permutation tie_break;

  bool has_cycle() const { return !cycle.empty(); }
};

/// True when two realizations describe the same infinite sequence
/// (equal prefix and cycle).
bool same_sequence(const SequenceRealization& a, const SequenceRealization& b);

/// Detection probability per unit time of the next search of a box with
/// hiding probability p_i after m_i failed searches: p (1-q)^m q / t.
double gittins_index(double p_i, const BoxSpec& box, long long m_i);

/// The sigma-preferred member of the argmax set of Gittins indices. Cyclic
/// instances at the tie-inducing strategy compare indices exactly through the
/// integer search-count rule; elsewhere indices are compared as floats with
/// exact-equality ties only (unsearched boxes still rank first at the
/// tie-inducing strategy, whose initial n-way tie is structural).
int next_box(const SearchState& state, const HidingStrategy& p,
             const ProblemInstance& instance, const Permutation& tie_break);

/// Generates the Gittins sequence against p under one fixed tie-break.
/// Cyclic instances run until the trailing window of cycle_length_searches
/// searches realizes each exponent exactly, then split into prefix + cycle.
/// Other instances generate a truncated prefix long enough for the
/// certified-interval stop rule.
SequenceRealization generate_sequence(const ProblemInstance& instance,
                                      const HidingStrategy& p,
                                      const Permutation& tie_break,
                                      const GenerationLimits& limits = {});

/// One realization per preference ordering, deduplicated by realized
/// sequence; throws CapExceeded when n! exceeds cap.
std::vector<SequenceRealization> enumerate_constant_tiebreak_sequences(
    const ProblemInstance& instance, const HidingStrategy& p, long long cap,
    const GenerationLimits& limits = {});

/// Worst relative slack (max index - chosen index) / max index over every
/// step of the realized portion; 0 for a perfectly greedy sequence.
double max_index_slack(const ProblemInstance& instance,
                       const HidingStrategy& p,
                       const SequenceRealization& realization);

}  // namespace searchgame
