#include "searchgame/io.hpp"

#include <cmath>
#include <cstdio>

namespace searchgame {

OutJson realization_json(const SequenceRealization& r) {
  OutJson j;
  j["prefix"] = r.prefix;
  if (r.has_cycle()) {
    j["cycle"] = r.cycle;
  } else {
    j["cycle"] = nullptr;
  }
  if (r.truncated_at) {
    j["truncated_at_searches"] = *r.truncated_at;
  } else {
    j["truncated_at_searches"] = nullptr;
  }
  return j;
}

OutJson profile_json(const DetectionProfile& p) {
  OutJson j;
  j["mode"] = p.mode == DetectionProfile::Mode::exact ? "exact" : "certified";
  j["values"] = OutJson::array();
  for (const ValueInterval& iv : p.values) {
    if (p.mode == DetectionProfile::Mode::exact) {
      j["values"].push_back(iv.lo);
    } else {
      j["values"].push_back({{"lo", iv.lo}, {"hi", iv.hi}});
    }
  }
  return j;
}

OutJson solution_json(const GameSolution& s) {
  OutJson j;
  j["L"] = s.lower;
  j["U"] = s.upper;
  j["hider"] = s.hider.probs;
  j["searcher"] = OutJson::array();
  for (const WeightedSequence& ws : s.searcher) {
    j["searcher"].push_back(
        {{"weight", ws.weight}, {"sequence", realization_json(ws.sequence)}});
  }
  j["termination"] =
      s.termination == GameSolution::Termination::gap_met ? "gap" : "iter";
  j["trace"] = OutJson::array();
  for (const auto& t : s.trace) {
    j["trace"].push_back(
        {{"iter", t.iteration}, {"D", t.d_size}, {"L", t.lower}, {"U", t.upper}});
  }
  return j;
}

OutJson verification_json(const VerificationReport& r) {
  OutJson j;
  j["value"] = r.value;
  j["counters_ok"] = r.counters_ok;
  j["max_index_gap"] = r.max_index_gap;
  j["equalized_ok"] = r.equalized_ok;
  j["value_spread"] = r.value_spread;
  j["passed"] = r.passed();
  return j;
}

OutJson optimality_json(const OptimalityTest& t) {
  OutJson j;
  switch (t.verdict) {
    case OptimalityTest::Verdict::optimal:
      j["verdict"] = "optimal";
      j["value"] = t.value;
      j["v_p"] = t.v_p;
      j["searcher"] = OutJson::array();
      for (const WeightedSequence& ws : t.searcher) {
        j["searcher"].push_back(
            {{"weight", ws.weight}, {"sequence", realization_json(ws.sequence)}});
      }
      break;
    case OptimalityTest::Verdict::not_optimal:
      j["verdict"] = "not_optimal";
      j["v_p"] = t.v_p;
      if (std::isfinite(t.value)) j["value"] = t.value;
      if (!t.reason.empty()) j["reason"] = t.reason;
      break;
    case OptimalityTest::Verdict::inconclusive:
      j["verdict"] = "inconclusive";
      j["reason"] = t.reason;
      break;
  }
  return j;
}

OutJson ruckle_json(const RuckleSolution& r) {
  OutJson j;
  j["q"] = r.q;
  j["h_bar"] = r.h_bar;
  j["h"] = r.h;
  j["p_star"] = r.p_star;
  j["residual"] = r.residual;
  return j;
}

namespace {

void dump(const OutJson& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      out += "null";
      break;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case nlohmann::json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out += buf;
      break;
    }
    case nlohmann::json::value_t::string:
      out += nlohmann::json(j.get<std::string>()).dump();
      break;
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        dump(el, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    default:  // integers
      out += j.dump();
      break;
  }
}

}  // namespace

std::string dump_json(const OutJson& j) {
  std::string out;
  dump(j, out);
  return out;
}

}  // namespace searchgame
