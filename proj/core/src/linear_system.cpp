#include "dsw/linear_system.hpp"

#include <algorithm>
#include <numeric>

#include "dsw/error.hpp"

namespace dsw {

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
  case SolveStatus::unique:
    return "unique";
  case SolveStatus::underdetermined:
    return "underdetermined";
  case SolveStatus::inconsistent:
    return "inconsistent";
  }
  return "?";
}

LinearSolution solve_exact(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
                           std::size_t unknowns) {
  if (rows.size() != rhs.size())
    throw_dimension_mismatch("solve_exact", rows.size(), rhs.size());
  for (const auto& r : rows)
    if (r.size() != unknowns)
      throw_dimension_mismatch("solve_exact", unknowns, r.size());

  const std::size_t m = rows.size();
  std::vector<std::size_t> origin(m);
  std::iota(origin.begin(), origin.end(), std::size_t{0});
  std::vector<std::size_t> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < m; ++c) {
    std::size_t p = r;
    while (p < m && rows[p][c] == 0)
      ++p;
    if (p == m)
      continue;
    // Keep the remaining rows in their original relative order.
    std::rotate(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.begin() + static_cast<std::ptrdiff_t>(p),
                rows.begin() + static_cast<std::ptrdiff_t>(p + 1));
    std::rotate(rhs.begin() + static_cast<std::ptrdiff_t>(r), rhs.begin() + static_cast<std::ptrdiff_t>(p),
                rhs.begin() + static_cast<std::ptrdiff_t>(p + 1));
    std::rotate(origin.begin() + static_cast<std::ptrdiff_t>(r), origin.begin() + static_cast<std::ptrdiff_t>(p),
                origin.begin() + static_cast<std::ptrdiff_t>(p + 1));
    const Rational inv = 1 / rows[r][c];
    for (std::size_t j = c; j < unknowns; ++j)
      rows[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < unknowns; ++j)
        if (rows[r][j] != 0)
          rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }

  LinearSolution out;
  out.rank = r;
  out.nullspace_dim = unknowns - r;
  for (std::size_t i = r; i < m; ++i)
    if (rhs[i] != 0 && (!out.inconsistent_row || origin[i] < *out.inconsistent_row))
      out.inconsistent_row = origin[i];
  if (out.inconsistent_row) {
    out.status = SolveStatus::inconsistent;
    return out;
  }
  out.values.assign(unknowns, 0);
  out.free.assign(unknowns, true);
  for (std::size_t i = 0; i < r; ++i) {
    out.values[pivot_col_of_row[i]] = rhs[i];
    out.free[pivot_col_of_row[i]] = false;
  }
  out.status = out.nullspace_dim == 0 ? SolveStatus::unique : SolveStatus::underdetermined;
  return out;
}

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<Rational> rhs(rows.size(), 0);
  return solve_exact(std::move(rows), std::move(rhs), cols).rank;
}

} // namespace dsw
