#include "dsw/monopole_levels.hpp"

#include <algorithm>

#include "dsw/error.hpp"

namespace dsw {

LevelDescriptor uhlenbeck_level(const SpinuData& base, Int ell) {
  if (ell < 0)
    throw Error(ErrorKind::invalid_argument, "uhlenbeck_level: negative level " + std::to_string(ell));
  LevelDescriptor out{ell, base};
  out.spinu_at_level.p1 = base.p1 + 4 * ell;
  return out;
}

Rational i_lambda(Int lambda_sq, Int chi, Int sigma) {
  return Rational(lambda_sq) - ratio(chi + sigma, 4);
}

bool delta_admissible(Int delta, Int w_sq, Int chi, Int sigma) {
  const Int s = chi + sigma;
  if ((3 * s) % 4 != 0)
    throw Error(ErrorKind::refusal, "3(chi + sigma)/4 = 3*" + std::to_string(s) +
                                        "/4 is not an integer; the delta congruence is meaningless");
  const Int rhs = -w_sq - 3 * s / 4;
  return ((delta - rhs) % 4 + 4) % 4 == 0;
}

Rational level_value(Int delta, const LatticeVector& c1, const LatticeVector& lambda,
                     const IntersectionForm& form, Int chi, Int sigma) {
  const Int a_sq = square(form, c1 - lambda);
  return ratio(4 * delta + 4 * a_sq + 3 * (chi + sigma), 16);
}

Int level_index(Int delta, const LatticeVector& c1, const LatticeVector& lambda, const IntersectionForm& form,
                Int chi, Int sigma) {
  const Rational ell = level_value(delta, c1, lambda, form, chi, sigma);
  if (!is_integer(ell))
    throw Error(ErrorKind::refusal, "non-integral level " + to_string(ell));
  if (ell < 0)
    throw Error(ErrorKind::refusal, "negative level " + to_string(ell));
  return to_int64(ell);
}

bool check_delta_window(Int delta, const Rational& i_lambda_value) { return Rational(delta) < i_lambda_value; }

ContributionList enumerate_contributions(const ManifoldData& m, const LatticeVector& w,
                                         const LatticeVector& lambda, Int delta, Int m_power, Int ell_max) {
  if (m_power < 0 || delta < 0 || 2 * m_power > delta)
    throw Error(ErrorKind::invalid_argument, "enumerate_contributions: need 0 <= m <= floor(delta/2)");
  ContributionList out;
  for (const auto& e : m.spinc_entries) {
    if (e.sw == 0)
      continue;
    const Rational ell = level_value(delta, e.c1, lambda, m.form, m.euler_chi, m.signature_sigma);
    if (!is_integer(ell)) {
      out.notes.push_back("c1 = " + to_string(e.c1) + ": non-integral level " + to_string(ell) + ", skipped");
      continue;
    }
    if (ell < 0) {
      out.notes.push_back("c1 = " + to_string(e.c1) + ": negative level " + to_string(ell) + ", skipped");
      continue;
    }
    const Int l = to_int64(ell);
    if (l > ell_max)
      continue;
    out.contributions.push_back({e, l, sign_factor(m.form, w, e.c1), std::min(l, delta / 2 - m_power)});
  }
  std::sort(out.contributions.begin(), out.contributions.end(), [](const Contribution& a, const Contribution& b) {
    if (a.ell != b.ell)
      return a.ell < b.ell;
    return a.entry.c1 < b.entry.c1;
  });
  return out;
}

} // namespace dsw
