#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Box labels are 1-based throughout the public API (reports, realizations,
// permutations, JSON); vector positions are 0-based.

namespace searchgame {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInstance : Error {
  EmptyInstance() : Error("instance has no boxes") {}
};
struct InvalidBox : Error {
  using Error::Error;
};
struct ExponentMismatch : Error {
  using Error::Error;
};
struct NonCoprimeExponents : Error {
  using Error::Error;
};
struct ExteriorHidingStrategy : Error {
  using Error::Error;
};
struct CycleNotFound : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct MissingCycle : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct BadWeights : Error {
  using Error::Error;
};
struct NumericalFailure : Error {
  using Error::Error;
};
struct NotExterior : Error {
  using Error::Error;
};
struct RejectionLimitExceeded : Error {
  using Error::Error;
};

/// One box: per-search detection probability q and search time t.
/// q = 1 marks a box whose single search is conclusive.
struct BoxSpec {
  double q = 0.0;
  double t = 0.0;
};

/// Verified cyclic structure: coprime exponents with
/// (1-q_i)^{x_i} equal across boxes.
struct CyclicStructure {
  std::vector<long long> exponents;
  long long cycle_length_searches = 0;  // sum of exponents
  double cycle_length_time = 0.0;       // sum of exponent * search time
};

enum class Cyclicity { cyclic, acyclic, unclassified };

struct ProblemInstance {
  std::vector<BoxSpec> boxes;
  Cyclicity cyclicity = Cyclicity::unclassified;
  std::optional<CyclicStructure> cycle;

  int size() const { return static_cast<int>(boxes.size()); }
};

inline constexpr double default_interior_threshold = 1e-6;
inline constexpr double cyclic_verify_rel_tol = 1e-12;

/// Probability vector over boxes. Interior means every component clears the
/// numerical-zero threshold.
struct HidingStrategy {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  bool interior(double threshold = default_interior_threshold) const;
};

/// Throws BadWeights unless p is nonnegative and sums to 1 within 1e-12.
void check_probability_vector(const std::vector<double>& p);

/// Builds an instance, verifying claimed cyclic exponents exactly against the
/// boxes, or accepting a caller-asserted acyclic tag. Never infers acyclicity
/// from floating-point values alone.
ProblemInstance validate_instance(
    std::vector<BoxSpec> boxes,
    std::optional<std::vector<long long>> claimed_exponents = std::nullopt,
    bool assert_acyclic = false);

/// Instance file model:
/// {"boxes":[{"q":..,"t":..},...],
///  "cyclic_exponents":[..]  (optional),
///  "acyclic":true|false     (optional)}
std::string serialize_instance(const ProblemInstance& instance);
ProblemInstance parse_instance(const std::string& text);
ProblemInstance load_instance(const std::string& path);

}  // namespace searchgame
