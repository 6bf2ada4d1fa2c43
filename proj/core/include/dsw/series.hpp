#pragma once

// Degree-truncated multivariate formal power series over Q in the coordinates
// h_1..h_n of h in H_2(X;R).
//
// A series with degree cap N knows exactly the coefficients of total degree
// < N; everything of degree >= N is identically dropped. Binary operations
// take the smaller cap of their operands.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsw/lattice.hpp"
#include "dsw/rational.hpp"

namespace dsw {

using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);

/// Graded order: total degree ascending, then lexicographically descending
/// exponents (h1^2 < h1 h2 < h2^2 within degree 2).
struct GradedOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class HomogeneousPolynomial;

class FormalSeries {
public:
  using TermMap = std::map<Exponents, Rational, GradedOrder>;

  FormalSeries() = default;
  FormalSeries(std::size_t num_vars, std::uint32_t degree_cap);

  static FormalSeries constant(std::size_t num_vars, std::uint32_t degree_cap, const Rational& c);
  static FormalSeries variable(std::size_t num_vars, std::uint32_t degree_cap, std::size_t j);
  /// sum_j coeffs[j] h_j
  static FormalSeries linear_form(std::span<const Int> coeffs, std::uint32_t degree_cap);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::uint32_t degree_cap() const noexcept { return degree_cap_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Accumulates c into the coefficient of e; silently drops degree >= cap.
  void add_term(const Exponents& e, const Rational& c);

  /// Throws Error(not_checkable) when deg(e) >= cap.
  Rational coefficient(const Exponents& e) const;

  FormalSeries& operator+=(const FormalSeries& o);
  FormalSeries& operator-=(const FormalSeries& o);
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b);
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b);
  friend FormalSeries operator-(FormalSeries a);
  /// Truncated Cauchy product.
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);

  FormalSeries scaled(const Rational& c) const;
  /// Cap becomes min(cap, n).
  FormalSeries truncated(std::uint32_t n) const;
  /// Throws when d >= cap.
  HomogeneousPolynomial homogeneous_part(std::uint32_t d) const;
  /// d/dh_j; the result cap is cap - 1.
  FormalSeries derivative(std::size_t j) const;

  friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

private:
  void check_compatible(const FormalSeries& o, const char* where) const;

  std::size_t num_vars_ = 0;
  std::uint32_t degree_cap_ = 0;
  TermMap terms_;
};

/// A series whose terms all share one total degree.
class HomogeneousPolynomial {
public:
  HomogeneousPolynomial(FormalSeries series, std::uint32_t degree);

  std::uint32_t degree() const noexcept { return degree_; }
  const FormalSeries& series() const noexcept { return series_; }
  bool is_zero() const noexcept { return series_.is_zero(); }

  friend bool operator==(const HomogeneousPolynomial&, const HomogeneousPolynomial&) = default;

private:
  FormalSeries series_;
  std::uint32_t degree_;
};

FormalSeries power(const FormalSeries& s, std::uint32_t n);

/// exp(sum_j kappa_j h_j), truncated.
FormalSeries exp_of_linear_form(std::span<const Int> kappa, std::uint32_t degree_cap);

/// exp(<K,h>) with <K,h> = sum_j pairing(K, e_j) h_j.
FormalSeries exp_linear(const IntersectionForm& form, const LatticeVector& k, std::uint32_t degree_cap);

/// Q(h,h) = sum_{j,k} gram_jk h_j h_k.
FormalSeries quadratic_form_series(const IntersectionForm& form, std::uint32_t degree_cap);

/// exp(Q(h,h)/2), truncated.
FormalSeries exp_quadratic(const IntersectionForm& form, std::uint32_t degree_cap);

/// Equality of every coefficient of total degree < n. Throws
/// Error(not_checkable) when n exceeds either cap.
bool congruent_mod_degree(const FormalSeries& a, const FormalSeries& b, std::uint32_t n);

/// First monomial (graded order) of degree < n where a and b differ.
std::optional<Exponents> first_difference(const FormalSeries& a, const FormalSeries& b,
                                          std::uint32_t n);

// Canonical text:
//   series vars=<n> cap=<N>
//   <coeff> * h1^a1 ... hn^an      one term per line, graded order
// Zero-exponent variables are omitted, exponent 1 is written bare, the
// constant term is the coefficient alone and the zero series body is "0".
std::string monomial_text(const Exponents& e);
std::string term_text(const Exponents& e, const Rational& c);
std::string to_text(const FormalSeries& s);
/// Body lines only (no header).
std::string body_text(const FormalSeries& s);

Exponents parse_monomial(std::string_view text, std::size_t num_vars);
FormalSeries parse_series(std::string_view text);
/// Parses body lines for a series of the given shape. Duplicate monomials
/// and terms at or beyond the cap are rejected.
FormalSeries parse_series_body(const std::vector<std::string>& lines, std::size_t num_vars,
                               std::uint32_t degree_cap);

} // namespace dsw
