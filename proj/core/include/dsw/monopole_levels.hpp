#pragma once

// Level bookkeeping for SO(3)-monopole cobordisms: Uhlenbeck levels, the
// admissibility congruence on delta, the level index of a spin-c stratum and
// enumeration of contributing strata.

#include <string>
#include <vector>

#include "dsw/invariants.hpp"
#include "dsw/lattice.hpp"
#include "dsw/rational.hpp"

namespace dsw {

struct SpinuData {
  Int p1 = 0;
  Mod2Class w2_class;
  LatticeVector c1;

  /// kappa = -p1/4.
  Rational kappa() const { return ratio(-p1, 4); }

  friend bool operator==(const SpinuData&, const SpinuData&) = default;
};

struct LevelDescriptor {
  Int ell = 0;
  SpinuData spinu_at_level;
};

/// p1 shifts by 4 ell; w2 and c1 are unchanged. Throws for ell < 0.
LevelDescriptor uhlenbeck_level(const SpinuData& base, Int ell);

/// i(Lambda) = Lambda^2 - (chi + sigma)/4.
Rational i_lambda(Int lambda_sq, Int chi, Int sigma);

/// delta == -w^2 - 3(chi + sigma)/4 (mod 4). Refuses when 3(chi+sigma)/4 is
/// not an integer.
bool delta_admissible(Int delta, Int w_sq, Int chi, Int sigma);

/// (delta + (c1 - Lambda)^2 + 3(chi + sigma)/4) / 4, exact.
Rational level_value(Int delta, const LatticeVector& c1, const LatticeVector& lambda,
                     const IntersectionForm& form, Int chi, Int sigma);

/// The level as a non-negative integer. Throws Error(refusal) with
/// "non-integral level" or "negative level" otherwise.
Int level_index(Int delta, const LatticeVector& c1, const LatticeVector& lambda, const IntersectionForm& form,
                Int chi, Int sigma);

/// delta < i(Lambda), strictly.
bool check_delta_window(Int delta, const Rational& i_lambda_value);

struct Contribution {
  SpincEntry entry;
  Int ell = 0;
  int sign = 1;
  Int i_range_max = 0;
};

struct ContributionList {
  std::vector<Contribution> contributions;
  /// One line per skipped entry (non-integral or negative level).
  std::vector<std::string> notes;
};

/// Entries with SW != 0 whose level lies in [0, ell_max], sorted by
/// (ell, c1). i_range_max = min(ell, floor(delta/2) - m).
ContributionList enumerate_contributions(const ManifoldData& m, const LatticeVector& w,
                                         const LatticeVector& lambda, Int delta, Int m_power, Int ell_max);

} // namespace dsw
