#include "searchgame/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <thread>

namespace searchgame {

SampleScheme SampleScheme::named(SchemeName name) {
  SampleScheme s;
  s.name = name;
  switch (name) {
    case SchemeName::varied: s.q_lo = 0.1; s.q_hi = 0.9; break;
    case SchemeName::low:    s.q_lo = 0.1; s.q_hi = 0.5; break;
    case SchemeName::medium: s.q_lo = 0.3; s.q_hi = 0.7; break;
    case SchemeName::high:   s.q_lo = 0.5; s.q_hi = 0.9; break;
  }
  return s;
}

SampleScheme SampleScheme::named(const std::string& name) {
  if (name == "varied") return named(SchemeName::varied);
  if (name == "low") return named(SchemeName::low);
  if (name == "medium") return named(SchemeName::medium);
  if (name == "high") return named(SchemeName::high);
  throw Error("unknown sample scheme: " + name);
}

std::string scheme_label(SchemeName name) {
  switch (name) {
    case SchemeName::varied: return "varied";
    case SchemeName::low: return "low";
    case SchemeName::medium: return "medium";
    case SchemeName::high: return "high";
  }
  return "?";
}

ProblemInstance sample_acyclic(const SampleScheme& scheme, int n, Rng& rng) {
  std::vector<BoxSpec> boxes(n);
  for (int i = 0; i < n; ++i) {
    boxes[i].q = rng.uniform(scheme.q_lo, scheme.q_hi);
    boxes[i].t = rng.uniform(scheme.t_lo, scheme.t_hi);
  }
  return validate_instance(std::move(boxes), std::nullopt, /*assert_acyclic=*/true);
}

ProblemInstance sample_cyclic(const SampleScheme& scheme, int n, Rng& rng,
                              int max_rejections) {
  for (int attempt = 0; attempt <= max_rejections; ++attempt) {
    double q1 = rng.uniform(scheme.q_lo, scheme.q_hi);
    std::vector<long long> x(n);
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform_int(scheme.x_lo, scheme.x_hi);
      t[i] = rng.uniform(scheme.t_lo, scheme.t_hi);
    }

    double common = std::pow(1.0 - q1, (double)x[0]);
    std::vector<BoxSpec> boxes(n);
    boxes[0] = {q1, t[0]};
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) {
      double qi = 1.0 - std::pow(common, 1.0 / (double)x[i]);
      if (qi < scheme.q_lo || qi > scheme.q_hi) ok = false;
      boxes[i] = {qi, t[i]};
    }
    if (!ok) continue;

    long long g = 0;
    for (long long xi : x) g = std::gcd(g, xi);
    for (long long& xi : x) xi /= g;
    return validate_instance(std::move(boxes), std::move(x));
  }
  throw RejectionLimitExceeded("cyclic sampling rejected " +
                               std::to_string(max_rejections) + " draws");
}

double future_benefit(const BoxSpec& box) {
  return -std::log(1.0 - box.q) / box.t;
}

namespace {

// Deterministic fan-out: worker w handles indices w, w+jobs, w+2*jobs, ...;
// every per-instance result lands in its own slot.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double nearest_rank_percentile(std::vector<double> sorted, double pct) {
  if (sorted.empty()) return 0.0;
  long long rank = (long long)std::ceil(pct / 100.0 * (double)sorted.size());
  rank = std::clamp(rank, 1LL, (long long)sorted.size());
  return sorted[rank - 1];
}

double value_of_p0(const ProblemInstance& instance, const HidingStrategy& p0,
                   const SolverConfig& config) {
  GenerationLimits lim;
  lim.max_searches = config.max_searches;
  lim.ratio_tol = config.ratio_tol;
  SequenceRealization counter =
      generate_sequence(instance, p0, Permutation::identity(instance.size()), lim);
  return expected_time_under_hiding(p0, detection_profile(instance, counter)).mid();
}

}  // namespace

StudyResult run_scheme_study(const SampleScheme& scheme, int n, int count,
                             bool cyclic, const SolverConfig& config,
                             std::uint64_t seed, int jobs) {
  StudyResult result;
  result.records.resize(count);
  std::vector<char> ok(count, 0);
  std::vector<std::string> errors(count);

  parallel_for(count, jobs, [&](int k) {
    try {
      Rng rng(derive_stream(seed, (std::uint64_t)k));
      ProblemInstance instance = cyclic ? sample_cyclic(scheme, n, rng)
                                        : sample_acyclic(scheme, n, rng);
      HidingStrategy p0 = compute_p0(instance);

      StudyRecord rec;
      rec.id = k;
      rec.cyclic = cyclic;
      rec.n = n;

      OptimalityTest test = test_hiding_optimality(instance, p0, config);
      double v_star;
      if (test.verdict == OptimalityTest::Verdict::optimal) {
        rec.v_p0 = test.v_p;
        rec.lower = test.v_p;
        rec.upper = test.value;
        rec.d_size = (int)test.searcher.size();
        v_star = test.value;
      } else {
        rec.v_p0 = test.verdict == OptimalityTest::Verdict::not_optimal
                       ? test.v_p
                       : value_of_p0(instance, p0, config);
        GameSolution sol = run_algorithm1(instance, config);
        rec.lower = sol.lower;
        rec.upper = sol.upper;
        rec.iterations = sol.iterations();
        rec.d_size = sol.trace.empty() ? 0 : sol.trace.back().d_size;
        v_star = sol.upper;
      }
      rec.subopt_pct = std::max(0.0, 100.0 * (v_star - rec.v_p0) / v_star);
      rec.p0_optimal = rec.subopt_pct < 1e-4;
      result.records[k] = rec;
      ok[k] = 1;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });

  std::vector<StudyRecord> kept;
  for (int k = 0; k < count; ++k) {
    if (ok[k]) {
      kept.push_back(result.records[k]);
    } else {
      result.failures.push_back("instance " + std::to_string(k) + ": " + errors[k]);
    }
  }
  result.records = std::move(kept);

  StudySummary& s = result.summary;
  s.count = (int)result.records.size();
  s.failures = (int)result.failures.size();
  if (s.count > 0) {
    std::vector<double> subopt;
    int optimal = 0;
    for (const auto& r : result.records) {
      subopt.push_back(r.subopt_pct);
      s.mean_subopt_pct += r.subopt_pct;
      optimal += r.p0_optimal ? 1 : 0;
    }
    s.mean_subopt_pct /= s.count;
    std::sort(subopt.begin(), subopt.end());
    s.pct75 = nearest_rank_percentile(subopt, 75.0);
    s.pct95 = nearest_rank_percentile(subopt, 95.0);
    s.pct99 = nearest_rank_percentile(subopt, 99.0);
    s.pct_p0_optimal = 100.0 * optimal / s.count;
  }
  return result;
}

std::vector<ScatterRow> future_benefit_scatter(int count,
                                               const SolverConfig& config,
                                               std::uint64_t seed, int jobs) {
  const SampleScheme scheme = SampleScheme::named(SchemeName::varied);
  std::vector<ScatterRow> rows(count);
  std::vector<char> ok(count, 0);

  parallel_for(count, jobs, [&](int k) {
    try {
      Rng rng(derive_stream(seed, (std::uint64_t)k));
      ProblemInstance instance = sample_acyclic(scheme, 2, rng);
      if (future_benefit(instance.boxes[0]) > future_benefit(instance.boxes[1])) {
        std::swap(instance.boxes[0], instance.boxes[1]);
      }
      HidingStrategy p0 = compute_p0(instance);

      double p_star;
      OptimalityTest test = test_hiding_optimality(instance, p0, config);
      if (test.verdict == OptimalityTest::Verdict::optimal) {
        p_star = p0.probs[0];
      } else {
        p_star = run_algorithm1(instance, config).hider.probs[0];
      }

      ScatterRow row;
      row.id = k;
      row.log_fb_ratio = std::log(future_benefit(instance.boxes[1]) /
                                  future_benefit(instance.boxes[0]));
      row.log_odds = p_star == p0.probs[0]
                         ? 0.0
                         : std::log(p_star * (1.0 - p0.probs[0]) /
                                    (p0.probs[0] * (1.0 - p_star)));
      rows[k] = row;
      ok[k] = 1;
    } catch (const std::exception&) {
      // skipped rows stay zeroed; the caller sees them via the id gap
    }
  });

  std::vector<ScatterRow> kept;
  for (int k = 0; k < count; ++k) {
    if (ok[k]) kept.push_back(rows[k]);
  }
  return kept;
}

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_study_csv(std::ostream& out, const std::vector<StudyRecord>& records) {
  out << "id,cyclic,n,v_p0,L,U,p0_optimal,subopt_pct,iters,D_size\n";
  for (const auto& r : records) {
    out << r.id << ',' << (r.cyclic ? 1 : 0) << ',' << r.n << ',' << fmt12(r.v_p0)
        << ',' << fmt12(r.lower) << ',' << fmt12(r.upper) << ','
        << (r.p0_optimal ? 1 : 0) << ',' << fmt12(r.subopt_pct) << ','
        << r.iterations << ',' << r.d_size << '\n';
  }
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows) {
  out << "id,log_fb_ratio,log_odds\n";
  for (const auto& r : rows) {
    out << r.id << ',' << fmt12(r.log_fb_ratio) << ',' << fmt12(r.log_odds) << '\n';
  }
}

}  // namespace searchgame
