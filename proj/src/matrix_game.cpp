#include "searchgame/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace searchgame {

namespace {

constexpr double eps = 1e-11;

struct SimplexResult {
  std::vector<double> x;
  std::vector<double> duals;
  double objective = 0.0;
};

// Dense tableau simplex for: maximize c.x s.t. A x <= b, x >= 0, with b >= 0
// (the slack basis is feasible, so no phase 1). Bland's rule for entering and
// leaving variables keeps the pivot path deterministic and cycle-free.
SimplexResult simplex_max(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b,
                          const std::vector<double>& c) {
  const int m = (int)b.size();
  const int n = (int)c.size();
  const int rhs = n + m;

  std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1.0;
    t[i][rhs] = b[i];
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t[m][j] = -c[j];

  const long long max_pivots = 2000LL * (m + n + 4);
  for (long long pivots = 0;; ++pivots) {
    if (pivots > max_pivots) {
      throw NumericalFailure("simplex exceeded its pivot budget");
    }
    int enter = -1;
    for (int j = 0; j < rhs; ++j) {
      if (t[m][j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= eps) continue;
      double ratio = t[i][rhs] / t[i][enter];
      double slack = 1e-12 * std::max(1.0, best);
      if (leave < 0 || ratio < best - slack ||
          (ratio <= best + slack && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      throw NumericalFailure("game LP is unbounded; payoffs malformed");
    }

    double inv = 1.0 / t[leave][enter];
    for (int j = 0; j <= rhs; ++j) t[leave][j] *= inv;
    t[leave][enter] = 1.0;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      double f = t[i][enter];
      for (int j = 0; j <= rhs; ++j) t[i][j] -= f * t[leave][j];
      t[i][enter] = 0.0;
    }
    basis[leave] = enter;
  }

  SimplexResult r;
  r.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) r.x[basis[i]] = t[i][rhs];
  }
  r.duals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) r.duals[i] = t[m][n + i];
  r.objective = t[m][rhs];
  return r;
}

}  // namespace

MatrixGameSolution solve_zero_sum(const std::vector<std::vector<double>>& payoff) {
  const int n = (int)payoff.size();
  if (n == 0) throw NumericalFailure("payoff matrix has no rows");
  const int m = (int)payoff.front().size();
  if (m == 0) throw NumericalFailure("payoff matrix has no columns");

  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : payoff) {
    if ((int)row.size() != m) throw NumericalFailure("payoff matrix is ragged");
    for (double v : row) {
      if (!std::isfinite(v)) throw NumericalFailure("payoff entries must be finite");
      lo = std::min(lo, v);
    }
  }
  const double shift = lo < 1e-9 ? 1.0 - lo : 0.0;

  // Column player's LP on the shifted matrix: maximize sum x_j subject to
  // A' x <= 1, x >= 0. Then v' = 1 / sum x, eta = x v', and the row duals
  // normalize to the optimal hiding strategy.
  std::vector<std::vector<double>> a(n, std::vector<double>(m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = payoff[i][j] + shift;
  }
  SimplexResult lp = simplex_max(a, std::vector<double>(n, 1.0),
                                 std::vector<double>(m, 1.0));
  double sum_x = 0.0;
  for (double v : lp.x) sum_x += v;
  if (!(sum_x > 0.0)) throw NumericalFailure("degenerate game LP solution");

  MatrixGameSolution sol;
  sol.value = 1.0 / sum_x - shift;
  sol.col_strategy.assign(m, 0.0);
  for (int j = 0; j < m; ++j) sol.col_strategy[j] = std::max(0.0, lp.x[j]) / sum_x;

  double sum_y = 0.0;
  for (double v : lp.duals) sum_y += v;
  if (!(sum_y > 0.0)) throw NumericalFailure("degenerate game LP duals");
  sol.row_strategy.assign(n, 0.0);
  for (int i = 0; i < n; ++i) sol.row_strategy[i] = std::max(0.0, lp.duals[i]) / sum_y;

  sol.row_payoffs.assign(n, 0.0);
  sol.col_payoffs.assign(m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      sol.row_payoffs[i] += payoff[i][j] * sol.col_strategy[j];
      sol.col_payoffs[j] += payoff[i][j] * sol.row_strategy[i];
    }
  }
  return sol;
}

}  // namespace searchgame
