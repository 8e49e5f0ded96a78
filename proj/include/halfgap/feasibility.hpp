#pragma once

#include <optional>
#include <vector>

#include "halfgap/rational.hpp"

namespace halfgap {

/// Exact feasibility of { z >= 0 : A z <= b } over the rationals.
///
/// Dictionary-form solver with the least-index criss-cross rule. With a zero
/// objective all reduced costs stay zero, so the only violations are basic
/// variables with negative value; picking the smallest violated variable
/// index and the smallest eligible entering index is finite (Terlaky's
/// criss-cross theorem) and needs no artificial variables or phase split.
/// Entries stay quotients of minors of (A|b) thanks to canonical Rat form,
/// which bounds intermediate growth better than unreduced pivoting would.
inline std::optional<std::vector<Rat>> feasible_leq(const std::vector<std::vector<Rat>>& A,
                                                    const std::vector<Rat>& b) {
  const size_t m = A.size();
  if (b.size() != m) throw input_error("feasible_leq: shape mismatch");
  const size_t n = m == 0 ? 0 : A[0].size();
  if (m == 0) return std::vector<Rat>(n, Rat(0));

  // Dictionary: basic[i] = rhs[i] - sum_j T[i][j] * var(nonbasic[j]).
  std::vector<std::vector<Rat>> T = A;
  std::vector<Rat> rhs = b;
  std::vector<size_t> basic(m), nonbasic(n);
  for (size_t j = 0; j < n; ++j) nonbasic[j] = j;       // structural z_j
  for (size_t i = 0; i < m; ++i) basic[i] = n + i;      // slack of row i

  while (true) {
    // Smallest-index basic variable with a negative value.
    size_t row = m;
    size_t best_var = ~size_t{0};
    for (size_t i = 0; i < m; ++i) {
      if (rhs[i].sign() < 0 && basic[i] < best_var) {
        best_var = basic[i];
        row = i;
      }
    }
    if (row == m) break;  // primal feasible

    // Smallest-index entering variable that can raise the violated basic.
    size_t col = n;
    best_var = ~size_t{0};
    for (size_t j = 0; j < n; ++j) {
      if (T[row][j].sign() < 0 && nonbasic[j] < best_var) {
        best_var = nonbasic[j];
        col = j;
      }
    }
    if (col == n) return std::nullopt;  // row reads basic = negative + nonneg terms

    // Pivot: nonbasic[col] enters, basic[row] leaves.
    Rat piv = T[row][col];
    Rat inv = Rat(1) / piv;
    for (size_t j = 0; j < n; ++j) T[row][j] = j == col ? inv : T[row][j] * inv;
    rhs[row] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      Rat f = T[i][col];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (j == col) {
          T[i][j] = -f * T[row][j];
        } else {
          T[i][j] -= f * T[row][j];
        }
      }
      rhs[i] -= f * rhs[row];
    }
    std::swap(basic[row], nonbasic[col]);
  }

  std::vector<Rat> z(n, Rat(0));
  for (size_t i = 0; i < m; ++i) {
    if (basic[i] < n) z[basic[i]] = rhs[i];
  }
  return z;
}

}  // namespace halfgap
