#pragma once

// Manifold data and the series identities between Donaldson and
// Seiberg-Witten invariants: SW series, Kronheimer-Mrowka form of the
// Donaldson series, Witten's formula, simple-type and vanishing checks, and
// exact recovery of KM coefficients.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsw/lattice.hpp"
#include "dsw/linear_system.hpp"
#include "dsw/rational.hpp"
#include "dsw/series.hpp"

namespace dsw {

struct SpincEntry {
  LatticeVector c1;
  Int sw = 0;

  friend bool operator==(const SpincEntry&, const SpincEntry&) = default;
};

/// How strictly the topological numbers are tied to the form.
///  - topological: b1 = 0, so rank = chi - 2 and sigma, b+ come from the form.
///  - synthetic: chi and sigma are free parameters (algebraic test fixtures);
///    b+ still has to match the form.
enum class Consistency { topological, synthetic };

struct ManifoldData {
  std::string name;
  Int euler_chi = 0;
  Int signature_sigma = 0;
  Int b_plus = 0;
  IntersectionForm form;
  Mod2Class w2;
  std::vector<SpincEntry> spinc_entries;
  bool sw_simple_type = false;
  Consistency consistency = Consistency::topological;

  std::size_t rank() const noexcept { return form.rank(); }
  /// c1 of the entries with SW != 0.
  std::vector<LatticeVector> basic_classes() const;

  friend bool operator==(const ManifoldData&, const ManifoldData&) = default;
};

struct ValidationOptions {
  /// Enforce the standing hypothesis b+ odd and > 1. The hypothesis checker
  /// relaxes it so that it can report the failure itself.
  bool standing_b_plus = true;
};

/// Every violated invariant, in a fixed order. Empty means valid.
std::vector<std::string> validation_errors(const ManifoldData& m, const ValidationOptions& opts = {});
/// Throws Error(load) listing every violation.
void validate(const ManifoldData& m, const ValidationOptions& opts = {});

/// Entries whose expected dimension (c1^2 - (2 chi + 3 sigma))/4 is nonzero
/// yet carry SW != 0: evidence against the asserted SW-simple type.
std::vector<std::string> simple_type_warnings(const ManifoldData& m);

/// c(X) = -(7 chi + 11 sigma)/4, exact.
Rational characteristic_number_c(Int chi, Int sigma);

/// (-1)^{(w^2 + w.K)/2}; throws Error(invalid_argument, "non-characteristic
/// class") when the exponent is not an integer.
int sign_factor(const IntersectionForm& form, const LatticeVector& w, const LatticeVector& k);

FormalSeries sw_series(const ManifoldData& m, const LatticeVector& w, std::uint32_t degree_cap);

struct KMTerm {
  Rational a;
  LatticeVector k;

  friend bool operator==(const KMTerm&, const KMTerm&) = default;
};

struct KMData {
  LatticeVector w;
  std::vector<KMTerm> terms;

  friend bool operator==(const KMData&, const KMData&) = default;
};

/// Throws Error(invalid_argument) unless every K_r is characteristic and a_r != 0.
void validate(const KMData& km, const IntersectionForm& form);

FormalSeries km_series(const KMData& km, const IntersectionForm& form, std::uint32_t degree_cap);

/// 2^{2-c(X)} exp(Q/2) SW(h). Refuses (Error(refusal)) when c(X) is not an integer.
FormalSeries witten_rhs(const ManifoldData& m, const LatticeVector& w, std::uint32_t degree_cap);

/// KM data predicted by Witten's formula: a = 2^{2-c} SW for each basic class.
KMData witten_km_data(const ManifoldData& m, const LatticeVector& w);

// ---------------------------------------------------------------------------
// Point values under the x -> 2 convention:
//   D(h^d x^m) := 2^m (d!/2) [degree-d part of the Donaldson series].

/// D^w(h^{delta-2m} x^m) as a homogeneous polynomial in h.
HomogeneousPolynomial point_evaluate(const KMData& km, const IntersectionForm& form, std::uint32_t delta,
                                     std::uint32_t m);

enum class RelationCheck { holds, violated, not_checkable };

const char* to_string(RelationCheck r) noexcept;

/// Table of D(h^d x^m), keyed by (d, m).
using PointValueTable = std::map<std::pair<std::uint32_t, std::uint32_t>, FormalSeries>;

/// D(h^d x^{m+2}) = 4 D(h^d x^m) on every (d,m),(d,m+2) pair present.
RelationCheck check_km_simple_type_relation(const PointValueTable& table);

enum class VanishingResult { pass, fail, vacuous };

const char* to_string(VanishingResult r) noexcept;

/// SW^w(h) == 0 mod h^{c(X)-2} (strict degree convention), or mod h^n when
/// `degree_override` is given. Vacuous when the comparison degree is <= 0.
VanishingResult mmp_vanishing_check(const ManifoldData& m, const LatticeVector& w,
                                    std::optional<Int> degree_override = std::nullopt);

// ---------------------------------------------------------------------------
// Fitting KM coefficients

struct KMFit {
  SolveStatus status = SolveStatus::unique;
  /// a_r per candidate (sign already unwound); empty when inconsistent.
  std::vector<Rational> coefficients;
  std::vector<bool> free;
  std::size_t nullspace_dim = 0;
  /// First monomial (graded order) whose equation cannot be met.
  std::optional<Exponents> witness;
  /// Indices of candidates whose fitted a_r is zero.
  std::vector<std::size_t> zero_coefficients;

  /// Nonzero fitted terms as KM data; zero coefficients are reported, not stored.
  KMData to_km_data(const LatticeVector& w, const std::vector<LatticeVector>& candidates) const;
};

/// Solves exp(Q/2) sum_r b_r exp(<K_r,h>) = target below degree n for b_r,
/// then a_r = (-1)^{(w^2 + w.K_r)/2} b_r. Throws on duplicate or empty candidates.
KMFit fit_km_coefficients(const FormalSeries& target, const std::vector<LatticeVector>& candidates,
                          const LatticeVector& w, const IntersectionForm& form, std::uint32_t n);

// ---------------------------------------------------------------------------
// Theorem hypotheses (level-zero / level-one Seiberg-Witten contributions)

enum class LevelVariant { level0, level1 };

const char* to_string(LevelVariant v) noexcept;

enum class FindingStatus { pass, fail, unknown_bounded };

const char* to_string(FindingStatus s) noexcept;

struct Finding {
  std::string name;
  FindingStatus status = FindingStatus::fail;
  std::string detail;
};

struct HypothesisReport {
  LevelVariant variant = LevelVariant::level0;
  LatticeVector w;
  LatticeVector lambda;
  Int target_square = 0;
  std::vector<Finding> findings;
  std::optional<HyperbolicPair> hyperbolic_witness;
  FindingStatus verdict = FindingStatus::fail;
  /// Vanishing of the SW series below degree c(X)-2, when c(X) is integral.
  std::optional<VanishingResult> mmp_vanishing;
};

/// Lambda^2 required by the variant: 2 - (chi + sigma) or 4 - (chi + sigma).
Int required_lambda_square(const ManifoldData& m, LevelVariant variant);

HypothesisReport check_theorem_hypotheses(const ManifoldData& m, const LatticeVector& w,
                                          const LatticeVector& lambda, LevelVariant variant,
                                          const SearchOptions& search = {});

/// `hypothesis=<name> status=<pass|fail|unknown-bounded>` lines plus witnesses.
std::string to_text(const HypothesisReport& report);

} // namespace dsw
