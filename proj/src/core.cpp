#include "searchgame/core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace searchgame {

bool HidingStrategy::interior(double threshold) const {
  for (double v : probs) {
    if (!(v >= threshold)) return false;
  }
  return !probs.empty();
}

void check_probability_vector(const std::vector<double>& p) {
  if (p.empty()) throw BadWeights("empty probability vector");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw BadWeights("negative or non-finite probability entry");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw BadWeights("probabilities sum to " + std::to_string(sum));
  }
}

namespace {

void check_boxes(const std::vector<BoxSpec>& boxes) {
  if (boxes.empty()) throw EmptyInstance();
  for (size_t i = 0; i < boxes.size(); ++i) {
    const BoxSpec& b = boxes[i];
    // q = 1 is accepted so that games with a conclusive box (Ruckle's
    // t1=t2=q2=1 family) are representable end to end.
    if (!std::isfinite(b.q) || !(b.q > 0.0) || !(b.q <= 1.0)) {
      throw InvalidBox("box " + std::to_string(i + 1) +
                       ": detection probability must lie in (0,1]");
    }
    if (!std::isfinite(b.t) || !(b.t > 0.0)) {
      throw InvalidBox("box " + std::to_string(i + 1) +
                       ": search time must be positive");
    }
  }
}

CyclicStructure verify_exponents(const std::vector<BoxSpec>& boxes,
                                 std::vector<long long> exponents) {
  const size_t n = boxes.size();
  if (exponents.size() != n) {
    throw ExponentMismatch("expected " + std::to_string(n) + " exponents, got " +
                           std::to_string(exponents.size()));
  }
  for (long long x : exponents) {
    if (x < 1) throw ExponentMismatch("exponents must be positive integers");
  }
  long long g = 0;
  for (long long x : exponents) g = std::gcd(g, x);
  if (g != 1) {
    throw NonCoprimeExponents("exponents share common factor " +
                              std::to_string(g));
  }

  // (1-q_i)^{x_i} must agree across boxes within 1e-12 relative.
  std::vector<double> powers(n);
  for (size_t i = 0; i < n; ++i) {
    if (boxes[i].q >= 1.0) {
      throw ExponentMismatch("box " + std::to_string(i + 1) +
                             ": q = 1 admits no cyclic structure");
    }
    powers[i] = std::pow(1.0 - boxes[i].q, static_cast<double>(exponents[i]));
  }
  for (size_t i = 0; i < n; ++i) {
    if (std::fabs(powers[i] - powers[0]) > cyclic_verify_rel_tol * powers[0]) {
      throw ExponentMismatch("survival powers disagree at box " +
                             std::to_string(i + 1));
    }
  }

  CyclicStructure cs;
  cs.exponents = std::move(exponents);
  cs.cycle_length_searches = 0;
  cs.cycle_length_time = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cs.cycle_length_searches += cs.exponents[i];
    cs.cycle_length_time += static_cast<double>(cs.exponents[i]) * boxes[i].t;
  }
  return cs;
}

}  // namespace

ProblemInstance validate_instance(
    std::vector<BoxSpec> boxes,
    std::optional<std::vector<long long>> claimed_exponents,
    bool assert_acyclic) {
  check_boxes(boxes);
  ProblemInstance instance;
  if (claimed_exponents) {
    instance.cycle = verify_exponents(boxes, std::move(*claimed_exponents));
    instance.cyclicity = Cyclicity::cyclic;
  } else if (assert_acyclic) {
    instance.cyclicity = Cyclicity::acyclic;
  } else {
    instance.cyclicity = Cyclicity::unclassified;
  }
  instance.boxes = std::move(boxes);
  return instance;
}

std::string serialize_instance(const ProblemInstance& instance) {
  nlohmann::ordered_json j;
  j["boxes"] = nlohmann::ordered_json::array();
  for (const BoxSpec& b : instance.boxes) {
    j["boxes"].push_back({{"q", b.q}, {"t", b.t}});
  }
  if (instance.cyclicity == Cyclicity::cyclic) {
    j["cyclic_exponents"] = instance.cycle->exponents;
  } else if (instance.cyclicity == Cyclicity::acyclic) {
    j["acyclic"] = true;
  }
  return j.dump();
}

ProblemInstance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidBox(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("boxes") || !j["boxes"].is_array()) {
    throw InvalidBox("instance JSON must carry a \"boxes\" array");
  }
  std::vector<BoxSpec> boxes;
  for (const auto& jb : j["boxes"]) {
    if (!jb.is_object() || !jb.contains("q") || !jb.contains("t")) {
      throw InvalidBox("each box needs numeric \"q\" and \"t\"");
    }
    boxes.push_back({jb["q"].get<double>(), jb["t"].get<double>()});
  }
  std::optional<std::vector<long long>> exponents;
  if (j.contains("cyclic_exponents")) {
    exponents = j["cyclic_exponents"].get<std::vector<long long>>();
  }
  bool acyclic = j.value("acyclic", false);
  return validate_instance(std::move(boxes), std::move(exponents), acyclic);
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace searchgame
