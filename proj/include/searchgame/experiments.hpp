#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "searchgame/core.hpp"
#include "searchgame/rng.hpp"
#include "searchgame/solver.hpp"

namespace searchgame {

enum class SchemeName { varied, low, medium, high };

/// Detection-probability range per named scheme, with the shared search-time
/// and exponent ranges.
struct SampleScheme {
  SchemeName name = SchemeName::varied;
  double q_lo = 0.1;
  double q_hi = 0.9;
  double t_lo = 1.0;
  double t_hi = 5.0;
  int x_lo = 1;
  int x_hi = 10;

  static SampleScheme named(SchemeName name);
  static SampleScheme named(const std::string& name);
};

std::string scheme_label(SchemeName name);

/// n boxes drawn q ~ U(q_lo, q_hi), t ~ U(1, 5); tagged acyclic, since
/// continuous draws give rationally related survival logs probability zero.
ProblemInstance sample_acyclic(const SampleScheme& scheme, int n, Rng& rng);

/// Cyclic draw: exponents x_i ~ DU(1,10) and q_1 ~ U(q_lo, q_hi) fix the
/// common survival power; the remaining q_i solve for it. The whole instance
/// is rejected and redrawn whenever some q_i leaves [q_lo, q_hi]; accepted
/// exponents are reduced to coprime form.
ProblemInstance sample_cyclic(const SampleScheme& scheme, int n, Rng& rng,
                              int max_rejections = 100000);

struct StudyRecord {
  long long id = 0;
  bool cyclic = false;
  int n = 0;
  double v_p0 = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool p0_optimal = false;
  double subopt_pct = 0.0;
  int iterations = 0;
  int d_size = 0;
};

struct StudySummary {
  int count = 0;
  int failures = 0;
  double mean_subopt_pct = 0.0;
  double pct75 = 0.0;
  double pct95 = 0.0;
  double pct99 = 0.0;
  double pct_p0_optimal = 0.0;
};

struct StudyResult {
  std::vector<StudyRecord> records;
  std::vector<std::string> failures;
  StudySummary summary;
};

/// Per-instance: the all-orderings optimality test of p0 where feasible,
/// otherwise (or on rejection) the bounding algorithm; aggregates the
/// suboptimality distribution. Deterministic given (scheme, n, count, seed),
/// independent of the number of jobs.
StudyResult run_scheme_study(const SampleScheme& scheme, int n, int count,
                             bool cyclic, const SolverConfig& config,
                             std::uint64_t seed, int jobs = 1);

/// Information gained per unit time by an unsuccessful search: -log(1-q)/t.
double future_benefit(const BoxSpec& box);

struct ScatterRow {
  long long id = 0;
  double log_fb_ratio = 0.0;  // log of future-benefit ratio, box 2 over box 1
  double log_odds = 0.0;      // log odds ratio of p* and p0 for box 1
};

/// Two-box acyclic games relabeled so box 1 has the lower future benefit;
/// emits the future-benefit ratio against how far the optimal hiding
/// probability moves beyond p0.
std::vector<ScatterRow> future_benefit_scatter(int count,
                                               const SolverConfig& config,
                                               std::uint64_t seed, int jobs = 1);

/// CSV, header: id,cyclic,n,v_p0,L,U,p0_optimal,subopt_pct,iters,D_size
void write_study_csv(std::ostream& out, const std::vector<StudyRecord>& records);
/// CSV, header: id,log_fb_ratio,log_odds
void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows);

}  // namespace searchgame
