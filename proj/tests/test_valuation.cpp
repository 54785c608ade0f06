#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "searchgame/experiments.hpp"
#include "searchgame/solver.hpp"
#include "searchgame/valuation.hpp"

using namespace searchgame;

namespace {

ProblemInstance example1() {
  return validate_instance({{0.4, 1.0}, {0.64, 0.6}}, std::vector<long long>{2, 1});
}

ProblemInstance symmetric2() {
  return validate_instance({{0.5, 1.0}, {0.5, 1.0}}, std::vector<long long>{1, 1});
}

}  // namespace

TEST_CASE("cyclic closed form: single box") {
  ProblemInstance inst = validate_instance({{0.5, 1.0}}, std::vector<long long>{1});
  SequenceRealization r =
      generate_sequence(inst, HidingStrategy{{1.0}}, Permutation::identity(1));
  DetectionProfile v = expected_detection_cyclic(inst, r);
  CHECK(v.values[0].lo == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("cyclic closed form: example cycle equalizes at 3.0625") {
  ProblemInstance inst = example1();
  SequenceRealization r =
      generate_sequence(inst, HidingStrategy{{0.75, 0.25}}, Permutation::identity(2));
  REQUIRE(r.cycle == std::vector<int>{1, 2, 1});
  DetectionProfile v = expected_detection_cyclic(inst, r);
  CHECK(v.values[0].lo == doctest::Approx(3.0625).epsilon(1e-12));
  CHECK(v.values[1].lo == doctest::Approx(3.0625).epsilon(1e-12));
}

TEST_CASE("cyclic closed form: alternating identical boxes") {
  ProblemInstance inst = symmetric2();
  SequenceRealization r = generate_sequence(inst, HidingStrategy{{0.5, 0.5}},
                                            Permutation::identity(2));
  DetectionProfile v = expected_detection_cyclic(inst, r);
  CHECK(v.values[0].lo == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(v.values[1].lo == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("cyclic valuation requires a cycle") {
  ProblemInstance inst = example1();
  SequenceRealization bare;
  bare.prefix = {1, 2};
  bare.schedule = {{1.0}, {1.6}};
  CHECK_THROWS_AS(expected_detection_cyclic(inst, bare), MissingCycle);
}

TEST_CASE("truncation bound") {
  TruncationBound tb = truncation_bound(example1());
  CHECK(tb.m == 3);  // log(0.36)/log(0.6) = 2 exactly, bumped past the tie
  CHECK(tb.m_hat == doctest::Approx(3.0 + 3.0 * 0.6).epsilon(1e-12));

  TruncationBound sym = truncation_bound(symmetric2());
  CHECK(sym.m == 2);
  CHECK(sym.m_hat == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("certified intervals: single box") {
  ProblemInstance inst = validate_instance({{0.5, 1.0}}, std::nullopt, true);
  auto [r, v] = expected_detection_acyclic(inst, HidingStrategy{{1.0}},
                                           Permutation::identity(1));
  CHECK(v.mode == DetectionProfile::Mode::certified);
  CHECK(v.values[0].lo <= 2.0);
  CHECK(v.values[0].hi >= 2.0);
  CHECK(v.values[0].width() / v.values[0].lo <= 1e-10);
  CHECK(r.truncated_at.has_value());
}

TEST_CASE("certified intervals agree with the Monte Carlo oracle") {
  ProblemInstance inst =
      validate_instance({{0.5, 1.0}, {0.31606, 1.0}}, std::nullopt, true);
  HidingStrategy p0 = compute_p0(inst);
  auto [r, v] = expected_detection_acyclic(inst, p0, Permutation::identity(2));
  for (int i = 1; i <= 2; ++i) {
    MonteCarloEstimate est = monte_carlo_oracle(inst, i, r, 1000000, 42 + i);
    CHECK(std::fabs(est.mean - v.values[i - 1].mid()) <= 3.0 * est.std_error);
  }
}

TEST_CASE("gaps between successive searches stay below m_hat") {
  SampleScheme varied = SampleScheme::named(SchemeName::varied);
  for (int k = 0; k < 10; ++k) {
    Rng rng(derive_stream(71, k));
    int n = 2 + k % 3;
    ProblemInstance inst = sample_acyclic(varied, n, rng);
    HidingStrategy p{oracles::random_interior_strategy(n, rng)};
    auto [r, v] = expected_detection_acyclic(inst, p, Permutation::identity(n));
    double m_hat = truncation_bound(inst).m_hat;
    for (int i = 0; i < n; ++i) {
      const auto& times = r.schedule[i];
      for (size_t j = 1; j < times.size(); ++j) {
        CHECK(times[j] - times[j - 1] <= m_hat + 1e-9);
      }
    }
  }
}

TEST_CASE("partial sums rise monotonically to the cyclic closed form") {
  ProblemInstance inst = example1();
  SequenceRealization r =
      generate_sequence(inst, HidingStrategy{{0.75, 0.25}}, Permutation::identity(2));
  DetectionProfile exact = expected_detection_cyclic(inst, r);
  double m_hat = truncation_bound(inst).m_hat;
  for (int box = 1; box <= 2; ++box) {
    double truth = exact.values[box - 1].lo;
    double prev = 0.0;
    for (long long k = 1; k <= 60; ++k) {
      double partial = oracles::partial_sum_oracle(inst, r, box, k);
      CHECK(partial >= prev - 1e-15);
      CHECK(partial <= truth + 1e-12);
      double tail = m_hat * std::pow(1.0 - inst.boxes[box - 1].q, (double)k) /
                    inst.boxes[box - 1].q;
      CHECK(truth - partial <= tail + 1e-12);
      prev = partial;
    }
    CHECK(oracles::partial_sum_oracle(inst, r, box, 400) ==
          doctest::Approx(truth).epsilon(1e-12));
  }
}

TEST_CASE("closed form matches long partial sums on random cyclic games") {
  SampleScheme varied = SampleScheme::named(SchemeName::varied);
  for (int k = 0; k < 10; ++k) {
    Rng rng(derive_stream(911, k));
    int n = 2 + k % 3;
    ProblemInstance inst = sample_cyclic(varied, n, rng);
    HidingStrategy p{oracles::random_interior_strategy(n, rng)};
    SequenceRealization r = generate_sequence(inst, p, Permutation::identity(n));
    DetectionProfile exact = expected_detection_cyclic(inst, r);
    for (int box = 1; box <= n; ++box) {
      double partial = oracles::partial_sum_oracle(inst, r, box, 2000);
      CHECK(partial == doctest::Approx(exact.values[box - 1].lo).epsilon(1e-10));
    }
  }
}

TEST_CASE("all constant tie-break counters share one hyperplane value") {
  SampleScheme varied = SampleScheme::named(SchemeName::varied);
  for (int k = 0; k < 12; ++k) {
    Rng rng(derive_stream(83, k));
    int n = 2 + k % 2;
    bool cyclic = k % 2 == 0;
    ProblemInstance inst =
        cyclic ? sample_cyclic(varied, n, rng) : sample_acyclic(varied, n, rng);
    HidingStrategy p =
        k % 3 == 0 ? compute_p0(inst)
                   : HidingStrategy{oracles::random_interior_strategy(n, rng)};
    auto seqs = enumerate_constant_tiebreak_sequences(inst, p, 720);
    double first = 0.0;
    for (size_t s = 0; s < seqs.size(); ++s) {
      double v = expected_time_under_hiding(p, detection_profile(inst, seqs[s])).mid();
      if (s == 0) {
        first = v;
      } else {
        CHECK(v == doctest::Approx(first).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("expected time under hiding") {
  DetectionProfile eq = DetectionProfile::exact({3.0625, 3.0625});
  CHECK(expected_time_under_hiding(HidingStrategy{{0.75, 0.25}}, eq).mid() ==
        doctest::Approx(3.0625).epsilon(1e-15));

  DetectionProfile ruckle = DetectionProfile::exact({2.5, 2.0});
  CHECK(expected_time_under_hiding(HidingStrategy{{0.8, 0.2}}, ruckle).mid() ==
        doctest::Approx(2.4).epsilon(1e-14));

  CHECK(expected_time_under_hiding(HidingStrategy{{1.0}},
                                   DetectionProfile::exact({2.0}))
            .mid() == doctest::Approx(2.0));

  CHECK_THROWS_AS(expected_time_under_hiding(HidingStrategy{{1.0}}, eq),
                  DimensionMismatch);
}

TEST_CASE("mixture evaluation") {
  DetectionProfile a = DetectionProfile::exact({3.0, 4.0});
  DetectionProfile b = DetectionProfile::exact({4.0, 3.0});
  DetectionProfile mixed = evaluate_mixture({0.5, 0.5}, {a, b});
  CHECK(mixed.values[0].mid() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(mixed.values[1].mid() == doctest::Approx(3.5).epsilon(1e-15));

  DetectionProfile only = evaluate_mixture({1.0}, {a});
  CHECK(only.values[0].mid() == doctest::Approx(3.0));
  CHECK(only.values[1].mid() == doctest::Approx(4.0));

  DetectionProfile r1 = DetectionProfile::exact({2.5, 2.0});
  DetectionProfile r2 = DetectionProfile::exact({2.25, 3.0});
  DetectionProfile eq = evaluate_mixture({0.6, 0.4}, {r1, r2});
  CHECK(eq.values[0].mid() == doctest::Approx(2.4).epsilon(1e-14));
  CHECK(eq.values[1].mid() == doctest::Approx(2.4).epsilon(1e-14));

  CHECK_THROWS_AS(evaluate_mixture({0.5, 0.4}, {a, b}), BadWeights);
  CHECK_THROWS_AS(evaluate_mixture({0.5, 0.5}, {a}), DimensionMismatch);
  DetectionProfile c = DetectionProfile::certified({{1.0, 1.0 + 1e-11}});
  CHECK_THROWS_AS(evaluate_mixture({0.5, 0.5}, {a, c}), DimensionMismatch);
  DetectionProfile d = evaluate_mixture(
      {0.5, 0.5}, {DetectionProfile::exact({2.0}), c});
  CHECK(d.mode == DetectionProfile::Mode::certified);
}

TEST_CASE("Monte Carlo oracle hits the closed forms") {
  ProblemInstance one = validate_instance({{0.5, 1.0}}, std::vector<long long>{1});
  SequenceRealization r1 =
      generate_sequence(one, HidingStrategy{{1.0}}, Permutation::identity(1));
  MonteCarloEstimate e1 = monte_carlo_oracle(one, 1, r1, 1000000, 7);
  CHECK(std::fabs(e1.mean - 2.0) <= 3.0 * e1.std_error);

  ProblemInstance sym = symmetric2();
  SequenceRealization r2 = generate_sequence(sym, HidingStrategy{{0.5, 0.5}},
                                             Permutation::identity(2));
  MonteCarloEstimate e2 = monte_carlo_oracle(sym, 2, r2, 1000000, 8);
  CHECK(std::fabs(e2.mean - 4.0) <= 3.0 * e2.std_error);

  ProblemInstance ex1 = example1();
  SequenceRealization r3 =
      generate_sequence(ex1, HidingStrategy{{0.75, 0.25}}, Permutation::identity(2));
  MonteCarloEstimate e3 = monte_carlo_oracle(ex1, 1, r3, 1000000, 9);
  CHECK(std::fabs(e3.mean - 3.0625) <= 3.0 * e3.std_error);

  // deterministic given the seed
  MonteCarloEstimate again = monte_carlo_oracle(ex1, 1, r3, 10000, 9);
  MonteCarloEstimate same = monte_carlo_oracle(ex1, 1, r3, 10000, 9);
  CHECK(again.mean == same.mean);
}

TEST_CASE("certified profiles bracket a longer truncation") {
  ProblemInstance inst =
      validate_instance({{0.45, 1.3}, {0.22, 2.1}, {0.7, 4.0}}, std::nullopt, true);
  HidingStrategy p{{0.3, 0.45, 0.25}};
  auto [r_short, v_short] =
      expected_detection_acyclic(inst, p, Permutation::identity(3), 1e-10);
  auto [r_long, v_long] =
      expected_detection_acyclic(inst, p, Permutation::identity(3), 1e-13);
  for (int i = 0; i < 3; ++i) {
    CHECK(v_short.values[i].lo <= v_long.values[i].lo);
    CHECK(v_long.values[i].lo <= v_short.values[i].hi);
    CHECK(v_long.values[i].hi <= v_short.values[i].hi + 1e-12);
    CHECK(v_short.values[i].width() / v_short.values[i].lo <= 1e-8);
  }
}
