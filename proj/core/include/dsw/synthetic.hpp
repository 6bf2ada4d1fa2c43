#pragma once

// Random synthetic fixtures: small unimodular forms in scrambled bases with
// Witten-consistent SW data (chi and sigma are free parameters chosen to hit a
// prescribed c(X)).

#include <random>

#include "dsw/invariants.hpp"

namespace dsw {

struct SyntheticOptions {
  std::size_t max_rank = 6;
  Int c_min = 2;
  Int c_max = 8;
  std::size_t max_classes = 5;
  Int sw_max = 5;
  /// Elementary basis changes applied to scramble the form.
  int scramble_steps = 3;
};

/// Odd-b+ (3 or 5) unimodular form of rank <= max_rank in a random basis.
IntersectionForm random_form(std::mt19937_64& rng, std::size_t max_rank = 6);

/// Characteristic vector K0 + 2y with y in [-spread, spread]^n.
LatticeVector random_characteristic(std::mt19937_64& rng, const IntersectionForm& form, Int spread = 1);

/// chi, sigma with chi + sigma = 2(1 + b+) and -(7 chi + 11 sigma)/4 = c.
std::pair<Int, Int> chi_sigma_for_c(Int c, Int b_plus);

ManifoldData random_synthetic_manifold(std::mt19937_64& rng, const SyntheticOptions& opts = {});

/// A single-basic-class manifold and (w, Lambda) for which delta is admissible
/// and the level ell >= floor(delta/2) - m, so Witten's formula fits the
/// rough structure formula exactly.
struct FitInstance {
  ManifoldData manifold;
  LatticeVector w;
  LatticeVector lambda;
  Int delta = 0;
  Int m = 0;
  Int ell = 0;
};

FitInstance make_fit_instance(std::mt19937_64& rng, Int delta, Int m, std::size_t min_rank = 3);

} // namespace dsw
