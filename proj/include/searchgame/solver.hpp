#pragma once

#include <string>
#include <utility>
#include <vector>

#include "searchgame/core.hpp"
#include "searchgame/gittins.hpp"
#include "searchgame/matrix_game.hpp"
#include "searchgame/valuation.hpp"

namespace searchgame {

struct SolverConfig {
  double eps = 1e-6;          // relative gap tolerance
  int max_iter = 150;
  double beta = 0.7;          // interior restoration scaler, in (0,1)
  double interior_threshold = 1e-6;
  long long permutation_cap = 720;  // all-orderings enumeration cap
  long long max_searches = 1'000'000;
  double ratio_tol = 1e-10;

  void check() const;
};

/// The hiding strategy proportional to t_i/q_i; ties all initial indices.
HidingStrategy compute_p0(const ProblemInstance& instance);

/// One weighted search sequence of a mixed search strategy.
struct WeightedSequence {
  double weight = 0.0;
  SequenceRealization sequence;
};

struct OptimalityTest {
  enum class Verdict { optimal, not_optimal, inconclusive };

  Verdict verdict = Verdict::inconclusive;
  double v_p = 0.0;       // expected detection time of p against its counters
  double value = 0.0;     // subgame value v*_D (when the subgame was solved)
  std::vector<WeightedSequence> searcher;  // optimal mixture when optimal
  std::string reason;     // set when inconclusive or short-circuited
};

/// Tests optimality of an interior hiding strategy by solving the finite
/// subgame over all constant-tie-break counters to p. Exterior p is rejected
/// outright; games with too many orderings come back inconclusive.
OptimalityTest test_hiding_optimality(const ProblemInstance& instance,
                                      const HidingStrategy& p,
                                      const SolverConfig& config = {});

struct GameSolution {
  struct TraceEntry {
    int iteration = 0;
    int d_size = 0;
    double lower = 0.0;
    double upper = 0.0;
  };
  enum class Termination { gap_met, iter_limit };

  double lower = 0.0;
  double upper = 0.0;
  HidingStrategy hider;
  std::vector<WeightedSequence> searcher;
  std::vector<TraceEntry> trace;
  Termination termination = Termination::iter_limit;

  int iterations() const { return (int)trace.size(); }
};

/// Iterative subgame bounding: starts from the n cyclically shifted
/// constant-tie-break counters to p0 and alternates solving the finite
/// subgame with appending one Gittins counter to its optimal hiding
/// strategy, restoring interiority when the subgame solution collapses onto
/// a face. Stops when U/L - 1 < eps or after max_iter iterations.
GameSolution run_algorithm1(const ProblemInstance& instance,
                            const SolverConfig& config = {});

/// One interior-restoration round: shrinks the zero-probability components of
/// p_d back toward the current interior p, appends a Gittins counter to the
/// blend (unless it duplicates a known sequence), and returns the blend.
/// Throws NotExterior when p_d is already interior.
HidingStrategy restore_interior(const ProblemInstance& instance,
                                std::vector<SequenceRealization>& d,
                                const HidingStrategy& p,
                                const HidingStrategy& p_d,
                                const SolverConfig& config = {});

struct VerificationReport {
  double value = 0.0;
  double max_index_gap = 0.0;   // worst relative slack over support sequences
  double value_spread = 0.0;    // max_i V_i(eta) - min_i V_i(eta)
  bool counters_ok = false;
  bool equalized_ok = false;

  bool passed() const { return counters_ok && equalized_ok; }
};

/// Checks the two optimality conditions on a computed solution: every support
/// sequence stays index-maximal against the returned hider strategy (within
/// tol relative), and the mixture equalizes detection times across boxes
/// (spread within tol * value).
VerificationReport verify_solution(const ProblemInstance& instance,
                                   const GameSolution& solution, double tol);

/// Closed form for the two-box game with t1 = t2 = q2 = 1 and q1 = q: the
/// fixed point h_bar = 1/q + (1-q)^{h_bar - 1}, h = floor(h_bar), and the
/// optimal box-1 hiding probability (1/q) / (1/q + (1-q)^{h-1}).
struct RuckleSolution {
  double q = 0.0;
  double h_bar = 0.0;
  long long h = 0;
  double p_star = 0.0;
  double residual = 0.0;
};

RuckleSolution ruckle_h(double q);

}  // namespace searchgame
