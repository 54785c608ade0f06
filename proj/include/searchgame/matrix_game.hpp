#pragma once

#include <vector>

#include "searchgame/core.hpp"

namespace searchgame {

/// Solution of a finite zero-sum matrix game: rows maximize, columns
/// minimize. Certificates carry both players' guarantees against every pure
/// reply.
struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  std::vector<double> row_payoffs;  // (A eta)_i: payoff per row vs col mix
  std::vector<double> col_payoffs;  // (p^T A)_j: payoff per column vs row mix
};

/// Solves the game by the classical LP reduction (payoffs shifted positive,
/// shift removed from the reported value). Deterministic: Bland's rule.
MatrixGameSolution solve_zero_sum(const std::vector<std::vector<double>>& payoff);

}  // namespace searchgame
