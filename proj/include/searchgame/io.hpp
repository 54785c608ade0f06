#pragma once

#include <string>

#include "json.hpp"
#include "searchgame/experiments.hpp"
#include "searchgame/solver.hpp"
#include "searchgame/valuation.hpp"

namespace searchgame {

using OutJson = nlohmann::ordered_json;

/// {"prefix":[...], "cycle":[...]|null, "truncated_at_searches":int|null}
OutJson realization_json(const SequenceRealization& r);

/// {"mode":"exact"|"certified", "values":[v... | {"lo":..,"hi":..}...]}
OutJson profile_json(const DetectionProfile& p);

/// {"L":..,"U":..,"hider":[..],"searcher":[{"weight":..,"sequence":{..}}],
///  "termination":"gap"|"iter","trace":[{"iter":..,"D":..,"L":..,"U":..}]}
OutJson solution_json(const GameSolution& s);

OutJson verification_json(const VerificationReport& r);
OutJson optimality_json(const OptimalityTest& t);
OutJson ruckle_json(const RuckleSolution& r);

/// Serializes with every floating value printed to 12 significant digits,
/// so identical runs produce byte-identical files.
std::string dump_json(const OutJson& j);

}  // namespace searchgame
