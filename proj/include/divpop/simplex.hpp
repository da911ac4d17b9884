// Copyright 2026 The divpop Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact simplex for matrix games. The tableau is kept integral with the
// fraction-free (Edmonds/Bareiss) update: every entry is an integer and the
// true tableau is T / D for a common positive denominator D, so no gcd work
// is needed and every intermediate division is exact.

#ifndef DIVPOP_SIMPLEX_HPP
#define DIVPOP_SIMPLEX_HPP

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "divpop/error.hpp"

namespace divpop {

struct MatrixGameSolution {
  /// Optimal mixed strategy of the minimizing (column) player.
  std::vector<mpq_class> column_strategy;
  /// Game value for the row player.
  mpq_class value;
  std::size_t pivots = 0;
};

namespace detail {

class IntegerTableau {
 public:
  /// maximize sum(y) s.t. B y <= 1, y >= 0, with B > 0 entrywise.
  explicit IntegerTableau(const std::vector<std::vector<mpz_class>>& b)
      : rows_(b.size()), cols_(b.empty() ? 0 : b[0].size()) {
    width_ = cols_ + rows_ + 1;
    t_.assign((rows_ + 1) * width_, mpz_class(0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) = b[i][j];
      at(i, cols_ + i) = 1;
      at(i, width_ - 1) = 1;
      basis_[i] = cols_ + i;
    }
    for (std::size_t j = 0; j < cols_; ++j) at(rows_, j) = -1;
    d_ = 1;
  }

  std::size_t solve() {
    std::size_t pivots = 0;
    int degenerate_run = 0;
    bool bland = false;
    mpz_class lhs;
    mpz_class rhs;
    for (;;) {
      // Entering column.
      std::size_t enter = width_;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (sgn(at(rows_, j)) >= 0) continue;
        if (enter == width_ || (!bland && at(rows_, j) < at(rows_, enter))) enter = j;
        if (bland) break;
      }
      if (enter == width_) return pivots;
      // Ratio test, ties to the smallest basic variable.
      std::size_t leave = rows_;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        if (leave == rows_) {
          leave = i;
          continue;
        }
        lhs = at(i, width_ - 1) * at(leave, enter);
        rhs = at(leave, width_ - 1) * at(i, enter);
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == rows_) throw Error(ErrorCode::internal, "matrix game LP unbounded");
      if (sgn(at(leave, width_ - 1)) == 0) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      ++pivots;
    }
  }

  /// Value of structural variable j.
  mpq_class primal(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] == j) return ratio(at(i, width_ - 1));
    }
    return 0;
  }

  mpq_class objective() const { return ratio(at(rows_, width_ - 1)); }

 private:
  mpq_class ratio(const mpz_class& x) const {
    mpq_class q(x, d_);
    q.canonicalize();
    return q;
  }

  mpz_class& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  void pivot(std::size_t r, std::size_t e) {
    const mpz_class p = at(r, e);
    mpz_class tmp;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const mpz_class f = at(i, e);
      for (std::size_t j = 0; j < width_; ++j) {
        mpz_class& x = at(i, j);
        x *= p;
        if (sgn(f) != 0 && sgn(at(r, j)) != 0) {
          tmp = f * at(r, j);
          x -= tmp;
        }
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d_.get_mpz_t());
      }
    }
    d_ = p;
    basis_[r] = e;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_ = 0;
  std::vector<mpz_class> t_;
  std::vector<std::size_t> basis_;
  mpz_class d_;
};

}  // namespace detail

/// Solves the zero-sum game with row-player payoff matrix `a` (integers,
/// any sign) exactly.
inline MatrixGameSolution solve_matrix_game(const std::vector<std::vector<mpz_class>>& a) {
  if (a.empty() || a[0].empty()) throw Error(ErrorCode::domain, "empty payoff matrix");
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  mpz_class shift = 0;
  for (const auto& row : a) {
    if (row.size() != cols) throw Error(ErrorCode::domain, "ragged payoff matrix");
    for (const auto& x : row) {
      if (abs(x) > shift) shift = abs(x);
    }
  }
  shift += 1;
  std::vector<std::vector<mpz_class>> b(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) b[i][j] = a[i][j] + shift;
  }
  detail::IntegerTableau tableau(b);
  MatrixGameSolution out;
  out.pivots = tableau.solve();
  const mpq_class total = tableau.objective();
  if (sgn(total) <= 0) throw Error(ErrorCode::internal, "degenerate matrix game LP");
  out.column_strategy.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) out.column_strategy[j] = tableau.primal(j) / total;
  out.value = 1 / total - shift;
  return out;
}

}  // namespace divpop

#endif  // DIVPOP_SIMPLEX_HPP
