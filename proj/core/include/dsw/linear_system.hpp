#pragma once

// Exact rational linear systems A x = b with deterministic pivoting: columns
// are processed left to right and the pivot is the first remaining row (in
// the caller's row order) with a nonzero entry.

#include <cstddef>
#include <optional>
#include <vector>

#include "dsw/rational.hpp"

namespace dsw {

enum class SolveStatus { unique, underdetermined, inconsistent };

const char* to_string(SolveStatus s) noexcept;

struct LinearSolution {
  SolveStatus status = SolveStatus::unique;
  /// A particular solution; free unknowns are set to 0. Empty when inconsistent.
  std::vector<Rational> values;
  std::vector<bool> free;
  std::size_t rank = 0;
  std::size_t nullspace_dim = 0;
  /// Smallest original row index reducing to 0 = nonzero.
  std::optional<std::size_t> inconsistent_row;

  bool consistent() const noexcept { return status != SolveStatus::inconsistent; }
};

/// Dense row-major system; every row must have `unknowns` entries.
LinearSolution solve_exact(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
                           std::size_t unknowns);

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows, std::size_t cols);

} // namespace dsw
