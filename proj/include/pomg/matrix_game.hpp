// Copyright 2026 The pomg-trunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POMG_MATRIX_GAME_HPP_
#define POMG_MATRIX_GAME_HPP_

#include <algorithm>
#include <limits>
#include <vector>

#include "pomg/core.hpp"

namespace pomg {

// Dense row-major payoff matrix; the row player maximizes.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}
  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

struct MatrixGameSolution {
  std::vector<double> row;
  std::vector<double> col;
  double value = 0.0;
  double gap = 0.0;  // max_i (M y)_i - min_j (x^T M)_j
};

// Guaranteed payoffs of a strategy pair: (min_j (x^T M)_j, max_i (M y)_i).
inline std::pair<double, double> matrix_game_bounds(const Matrix& M, const std::vector<double>& x,
                                                    const std::vector<double>& y) {
  double lo = std::numeric_limits<double>::infinity();
  for (int j = 0; j < M.cols; ++j) {
    double v = 0.0;
    for (int i = 0; i < M.rows; ++i) v += x[i] * M(i, j);
    lo = std::min(lo, v);
  }
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < M.rows; ++i) {
    double v = 0.0;
    for (int j = 0; j < M.cols; ++j) v += M(i, j) * y[j];
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// Simplex on max sum(y) s.t. M' y <= 1, y >= 0, with M' the payoff shifted to
// be >= 1. Bland's rule; the row strategy is read off the slack duals.
inline MatrixGameSolution solve_matrix_game(const Matrix& M) {
  const int m = M.rows, n = M.cols;
  if (m <= 0 || n <= 0) throw Error("matrix game needs at least one row and one column");
  double lo = std::numeric_limits<double>::infinity();
  for (double v : M.data) lo = std::min(lo, v);
  const double shift = 1.0 - lo;

  const int width = n + m + 1;
  std::vector<double> tab(static_cast<std::size_t>(m + 1) * width, 0.0);
  auto at = [&](int r, int c) -> double& { return tab[static_cast<std::size_t>(r) * width + c]; };
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = M(i, j) + shift;
    at(i, n + i) = 1.0;
    at(i, width - 1) = 1.0;
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) at(m, j) = -1.0;

  constexpr double eps = 1e-12;
  const int max_pivots = 50 * (m + n) + 1000;
  for (int it = 0; it < max_pivots; ++it) {
    int enter = -1;
    for (int j = 0; j < width - 1; ++j) {
      if (at(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (at(i, enter) > eps) {
        double ratio = at(i, width - 1) / at(i, enter);
        if (leave < 0 || ratio < best - eps) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + eps && basis[i] < basis[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded cannot occur with a positive matrix
    const double piv = at(leave, enter);
    for (int c = 0; c < width; ++c) at(leave, c) /= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }

  MatrixGameSolution sol;
  sol.col.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) sol.col[basis[i]] = std::max(0.0, at(i, width - 1));
  }
  sol.row.assign(m, 0.0);
  for (int i = 0; i < m; ++i) sol.row[i] = std::max(0.0, at(m, n + i));
  auto normalize = [](std::vector<double>& v) {
    double t = sum(v);
    if (t > 0.0) {
      for (double& x : v) x /= t;
    } else {
      std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
    }
  };
  normalize(sol.col);
  normalize(sol.row);
  auto [guaranteed, conceded] = matrix_game_bounds(M, sol.row, sol.col);
  sol.value = 0.5 * (guaranteed + conceded);
  sol.gap = conceded - guaranteed;
  return sol;
}

}  // namespace pomg

#endif  // POMG_MATRIX_GAME_HPP_
