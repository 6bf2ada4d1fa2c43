#pragma once

// Symbolic scaffolding for the structure formula
//
//   D^w(h^{delta-2m} x^m) = sum_s (-1)^{(w^2 + w.c1(s))/2} SW(s)
//                           * sum_{i=0}^{min(ell, [delta/2]-m)} (p_{delta,ell,m,i}(c1(s)-Lambda, Lambda) Q^i)(h)
//
// with p_{delta,ell,m,i} an unknown homogeneous polynomial of degree
// delta-2m-2i in the two linear forms <A,h>, <B,h> (A = c1(s) - Lambda,
// B = Lambda). Unknown coefficients are keyed by the exact parameter
// signature of each spin-c entry and solved as one exact linear system.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsw/invariants.hpp"
#include "dsw/linear_system.hpp"
#include "dsw/series.hpp"

namespace dsw {

struct TemplateEntry {
  Int i = 0;
  /// delta - 2m - 2i; unknowns j = 0..degree.
  Int degree = 0;
};

struct CoefficientTemplate {
  Int delta = 0;
  Int m = 0;
  Int ell = 0;
  std::vector<TemplateEntry> entries;

  std::size_t unknown_count() const;
};

/// i ranges over [0, min(ell, floor(delta/2) - m)]. Throws unless
/// 0 <= m <= floor(delta/2) and ell >= 0.
CoefficientTemplate build_template(Int delta, Int m, Int ell);

/// Degree or i-range violations of a (possibly hand-edited) template.
std::vector<std::string> template_violations(const CoefficientTemplate& t);

/// The quantities the coefficients are universal functions of.
struct ParameterSignature {
  Int chi = 0;
  Int sigma = 0;
  Int c1_sq = 0;
  Int lambda_sq = 0;
  Int c1_lambda = 0;
  Int delta = 0;
  Int m = 0;
  Int ell = 0;

  friend auto operator<=>(const ParameterSignature&, const ParameterSignature&) = default;
};

std::string to_string(const ParameterSignature& s);

struct UnknownKey {
  ParameterSignature signature;
  Int i = 0;
  Int j = 0;

  friend auto operator<=>(const UnknownKey&, const UnknownKey&) = default;
};

/// "p[delta,ell,m,i][j]"
std::string label(const UnknownKey& k);

/// A polynomial in h, homogeneous of degree `degree`, whose coefficients are
/// linear in the unknowns: sum_u u * columns[u].
struct LinearPolynomial {
  std::size_t num_vars = 0;
  std::uint32_t degree = 0;
  std::map<UnknownKey, FormalSeries> columns;
  std::vector<std::string> notes;

  /// Unknowns absent from `values` count as 0.
  FormalSeries substitute(const std::map<UnknownKey, Rational>& values) const;
};

/// Refuses inadmissible delta; spin-c entries with a non-integral or negative
/// level are skipped with a note. Every unknown of every template touched is
/// present in `columns`, even when its column vanishes.
LinearPolynomial assemble_rough_rhs(const ManifoldData& manifold, const LatticeVector& w,
                                    const LatticeVector& lambda, Int delta, Int m);

enum class LhsSource { user_table, point_evaluate_x2 };

const char* to_string(LhsSource s) noexcept;

struct Observation {
  std::string label;
  ManifoldData manifold;
  LatticeVector w;
  LatticeVector lambda;
  HomogeneousPolynomial lhs;
  LhsSource source = LhsSource::user_table;
};

struct FitProblem {
  Int delta = 0;
  Int m = 0;
  std::vector<Observation> observations;
};

/// Observation whose LHS is D^w(h^{delta-2m} x^m) computed from Witten's
/// formula under the x -> 2 convention.
Observation witten_observation(std::string label, ManifoldData manifold, LatticeVector w, LatticeVector lambda,
                               Int delta, Int m);

struct FitWitness {
  std::size_t observation = 0;
  Exponents monomial;
};

struct FitReport {
  Int delta = 0;
  Int m = 0;
  SolveStatus status = SolveStatus::unique;
  std::size_t nullspace_dim = 0;
  std::size_t equations = 0;
  std::vector<UnknownKey> unknowns;
  /// Particular solution (free unknowns at 0); empty when inconsistent.
  std::vector<Rational> values;
  std::vector<bool> free;
  std::optional<FitWitness> witness;
  std::vector<std::string> notes;

  bool consistent() const noexcept { return status != SolveStatus::inconsistent; }
  std::map<UnknownKey, Rational> solution_map() const;
};

/// Equates the assembled right-hand side with each observed LHS in the
/// h-monomial basis and solves exactly. Throws on an empty problem.
FitReport solve_coefficients(const FitProblem& problem);

struct SolutionCheck {
  bool ok = true;
  std::vector<std::string> findings;
};

/// Re-substitutes the solution, requiring exact equality per observation,
/// homogeneous degree delta-2m and the i-range on every instantiated term.
SolutionCheck validate_solution(const FitProblem& problem, const FitReport& report);

/// Solution report: one `p[delta,ell,m,i][j] = <rational>` or `= free` line
/// per unknown, grouped by parameter signature, plus cross-group comparisons.
std::string to_text(const FitReport& report, const FitProblem& problem);

} // namespace dsw
