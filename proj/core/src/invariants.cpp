#include "dsw/invariants.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dsw/error.hpp"

namespace dsw {

namespace {

std::string class_text(const LatticeVector& v) { return to_string(v); }

Int parity_exponent(const IntersectionForm& form, const LatticeVector& w, const LatticeVector& k) {
  return square(form, w) + pairing(form, w, k);
}

} // namespace

// ---------------------------------------------------------------------------
// ManifoldData

std::vector<LatticeVector> ManifoldData::basic_classes() const {
  std::vector<LatticeVector> out;
  for (const auto& e : spinc_entries)
    if (e.sw != 0)
      out.push_back(e.c1);
  return out;
}

std::vector<std::string> validation_errors(const ManifoldData& m, const ValidationOptions& opts) {
  std::vector<std::string> errors;
  const std::size_t rank = m.form.rank();
  if (m.w2.size() != rank)
    errors.push_back("w2 has " + std::to_string(m.w2.size()) + " bits, form rank is " + std::to_string(rank));
  const auto sig = signature_decomposition(m.form);
  if (m.consistency == Consistency::topological) {
    if (static_cast<Int>(rank) != m.euler_chi - 2)
      errors.push_back("rank " + std::to_string(rank) + " differs from chi - 2 = " +
                       std::to_string(m.euler_chi - 2) + " (b1 = 0 is assumed)");
    if (sig.sigma != m.signature_sigma)
      errors.push_back("form signature " + std::to_string(sig.sigma) + " differs from sigma = " +
                       std::to_string(m.signature_sigma));
  }
  if (sig.b_plus != m.b_plus)
    errors.push_back("form has b+ = " + std::to_string(sig.b_plus) + ", declared b_plus = " +
                     std::to_string(m.b_plus));
  if (opts.standing_b_plus && (m.b_plus % 2 == 0 || m.b_plus <= 1))
    errors.push_back("b_plus = " + std::to_string(m.b_plus) + " must be odd and > 1");
  if (m.w2.size() == rank && !is_characteristic(m.form, m.w2.lift()))
    errors.push_back("w2 is not the mod-2 reduction of a characteristic class");
  std::set<LatticeVector> seen;
  for (std::size_t i = 0; i < m.spinc_entries.size(); ++i) {
    const auto& e = m.spinc_entries[i];
    const std::string where = "spinc entry " + std::to_string(i + 1);
    if (e.c1.size() != rank) {
      errors.push_back(where + ": c1 has length " + std::to_string(e.c1.size()) + ", expected " +
                       std::to_string(rank));
      continue;
    }
    if (!is_characteristic(m.form, e.c1))
      errors.push_back(where + ": c1 = " + class_text(e.c1) + " is not characteristic");
    if (!seen.insert(e.c1).second)
      errors.push_back(where + ": duplicate c1 = " + class_text(e.c1));
  }
  return errors;
}

void validate(const ManifoldData& m, const ValidationOptions& opts) {
  auto errors = validation_errors(m, opts);
  if (errors.empty())
    return;
  std::string msg = "invalid manifold data '" + m.name + "':";
  for (const auto& e : errors)
    msg += "\n  " + e;
  throw Error(ErrorKind::load, msg);
}

std::vector<std::string> simple_type_warnings(const ManifoldData& m) {
  std::vector<std::string> out;
  const Int base = 2 * m.euler_chi + 3 * m.signature_sigma;
  for (const auto& e : m.spinc_entries) {
    if (e.sw == 0)
      continue;
    const Rational dim = ratio(square(m.form, e.c1) - base, 4);
    if (dim != 0)
      out.push_back("c1 = " + class_text(e.c1) + " has SW = " + std::to_string(e.sw) +
                    " but expected dimension " + to_string(dim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series formulas

Rational characteristic_number_c(Int chi, Int sigma) {
  return ratio(-(7 * chi + 11 * sigma), 4);
}

int sign_factor(const IntersectionForm& form, const LatticeVector& w, const LatticeVector& k) {
  const Int e = parity_exponent(form, w, k);
  if (e % 2 != 0)
    throw Error(ErrorKind::invalid_argument,
                "non-characteristic class: (w^2 + w.K) is odd for K = " + class_text(k));
  const Int half = e / 2;
  return half % 2 == 0 ? 1 : -1;
}

FormalSeries sw_series(const ManifoldData& m, const LatticeVector& w, std::uint32_t degree_cap) {
  std::vector<const SpincEntry*> entries;
  for (const auto& e : m.spinc_entries)
    if (e.sw != 0)
      entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->c1 < b->c1; });
  FormalSeries out(m.rank(), degree_cap);
  for (const auto* e : entries) {
    const int s = sign_factor(m.form, w, e->c1);
    out += exp_linear(m.form, e->c1, degree_cap).scaled(Rational(s * e->sw));
  }
  return out;
}

void validate(const KMData& km, const IntersectionForm& form) {
  if (km.w.size() != form.rank())
    throw_dimension_mismatch("KMData w", form.rank(), km.w.size());
  for (const auto& t : km.terms) {
    if (t.k.size() != form.rank())
      throw_dimension_mismatch("KMData K", form.rank(), t.k.size());
    if (!is_characteristic(form, t.k))
      throw Error(ErrorKind::invalid_argument, "KM class " + class_text(t.k) + " is not characteristic");
    if (t.a == 0)
      throw Error(ErrorKind::invalid_argument, "KM coefficient for " + class_text(t.k) + " is zero");
  }
}

FormalSeries km_series(const KMData& km, const IntersectionForm& form, std::uint32_t degree_cap) {
  FormalSeries sum(form.rank(), degree_cap);
  for (const auto& t : km.terms) {
    const int s = sign_factor(form, km.w, t.k);
    sum += exp_linear(form, t.k, degree_cap).scaled(t.a * s);
  }
  if (sum.is_zero())
    return sum;
  return exp_quadratic(form, degree_cap) * sum;
}

namespace {

Int integral_c(const ManifoldData& m) {
  const Rational c = characteristic_number_c(m.euler_chi, m.signature_sigma);
  if (!is_integer(c))
    throw Error(ErrorKind::refusal, "c(X) = " + to_string(c) + " is not an integer for '" + m.name +
                                        "'; Witten's formula is not defined here");
  return to_int64(c);
}

} // namespace

FormalSeries witten_rhs(const ManifoldData& m, const LatticeVector& w, std::uint32_t degree_cap) {
  const Int c = integral_c(m);
  FormalSeries sw = sw_series(m, w, degree_cap);
  if (sw.is_zero())
    return sw;
  return (exp_quadratic(m.form, degree_cap) * sw).scaled(pow2(2 - c));
}

KMData witten_km_data(const ManifoldData& m, const LatticeVector& w) {
  const Rational factor = pow2(2 - integral_c(m));
  KMData km{w, {}};
  for (const auto& e : m.spinc_entries)
    if (e.sw != 0)
      km.terms.push_back({factor * e.sw, e.c1});
  std::sort(km.terms.begin(), km.terms.end(), [](const KMTerm& a, const KMTerm& b) { return a.k < b.k; });
  return km;
}

// ---------------------------------------------------------------------------
// Point values

HomogeneousPolynomial point_evaluate(const KMData& km, const IntersectionForm& form, std::uint32_t delta,
                                     std::uint32_t m) {
  if (2 * m > delta)
    throw Error(ErrorKind::invalid_argument, "point_evaluate: m must be <= floor(delta/2)");
  const std::uint32_t d = delta - 2 * m;
  FormalSeries series = km_series(km, form, d + 1);
  const Rational scale = pow2(m) * factorial(d) / 2;
  return HomogeneousPolynomial(series.homogeneous_part(d).series().scaled(scale), d);
}

const char* to_string(RelationCheck r) noexcept {
  switch (r) {
  case RelationCheck::holds:
    return "holds";
  case RelationCheck::violated:
    return "violated";
  case RelationCheck::not_checkable:
    return "not-checkable";
  }
  return "?";
}

RelationCheck check_km_simple_type_relation(const PointValueTable& table) {
  bool any = false;
  for (const auto& [key, value] : table) {
    auto it = table.find({key.first, key.second + 2});
    if (it == table.end())
      continue;
    any = true;
    if (it->second.terms() != value.scaled(4).terms())
      return RelationCheck::violated;
  }
  return any ? RelationCheck::holds : RelationCheck::not_checkable;
}

const char* to_string(VanishingResult r) noexcept {
  switch (r) {
  case VanishingResult::pass:
    return "pass";
  case VanishingResult::fail:
    return "fail";
  case VanishingResult::vacuous:
    return "vacuous";
  }
  return "?";
}

VanishingResult mmp_vanishing_check(const ManifoldData& m, const LatticeVector& w,
                                    std::optional<Int> degree_override) {
  const Int n = degree_override ? *degree_override : integral_c(m) - 2;
  if (n <= 0)
    return VanishingResult::vacuous;
  return sw_series(m, w, static_cast<std::uint32_t>(n)).is_zero() ? VanishingResult::pass
                                                                   : VanishingResult::fail;
}

// ---------------------------------------------------------------------------
// KM fitting

KMData KMFit::to_km_data(const LatticeVector& w, const std::vector<LatticeVector>& candidates) const {
  KMData km{w, {}};
  for (std::size_t r = 0; r < coefficients.size(); ++r)
    if (coefficients[r] != 0)
      km.terms.push_back({coefficients[r], candidates.at(r)});
  return km;
}

KMFit fit_km_coefficients(const FormalSeries& target, const std::vector<LatticeVector>& candidates,
                          const LatticeVector& w, const IntersectionForm& form, std::uint32_t n) {
  if (candidates.empty())
    throw Error(ErrorKind::invalid_argument, "fit_km_coefficients: no candidate classes");
  std::set<LatticeVector> distinct(candidates.begin(), candidates.end());
  if (distinct.size() != candidates.size())
    throw Error(ErrorKind::invalid_argument, "fit_km_coefficients: duplicate candidate classes");
  if (target.num_vars() != form.rank())
    throw_dimension_mismatch("fit_km_coefficients", form.rank(), target.num_vars());
  if (n > target.degree_cap())
    throw Error(ErrorKind::not_checkable, "fit_km_coefficients: target known only below degree " +
                                              std::to_string(target.degree_cap()));

  std::vector<int> signs;
  for (const auto& k : candidates)
    signs.push_back(sign_factor(form, w, k));

  const FormalSeries gaussian = exp_quadratic(form, n);
  std::vector<FormalSeries> columns;
  std::set<Exponents, GradedOrder> monomials;
  for (const auto& k : candidates) {
    columns.push_back(gaussian * exp_linear(form, k, n));
    for (const auto& [e, c] : columns.back().terms())
      monomials.insert(e);
  }
  const FormalSeries lhs = target.truncated(n);
  for (const auto& [e, c] : lhs.terms())
    monomials.insert(e);

  std::vector<Exponents> order(monomials.begin(), monomials.end());
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  rows.reserve(order.size());
  for (const auto& e : order) {
    std::vector<Rational> row;
    row.reserve(columns.size());
    for (const auto& col : columns) {
      auto it = col.terms().find(e);
      row.push_back(it == col.terms().end() ? Rational(0) : it->second);
    }
    rows.push_back(std::move(row));
    auto it = lhs.terms().find(e);
    rhs.push_back(it == lhs.terms().end() ? Rational(0) : it->second);
  }

  const LinearSolution sol = solve_exact(std::move(rows), std::move(rhs), candidates.size());
  KMFit fit;
  fit.status = sol.status;
  fit.nullspace_dim = sol.nullspace_dim;
  if (!sol.consistent()) {
    fit.witness = order.at(*sol.inconsistent_row);
    return fit;
  }
  fit.free = sol.free;
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    fit.coefficients.push_back(sol.values[r] * signs[r]);
    if (fit.coefficients.back() == 0 && !sol.free[r])
      fit.zero_coefficients.push_back(r);
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Theorem hypotheses

const char* to_string(LevelVariant v) noexcept { return v == LevelVariant::level0 ? "level0" : "level1"; }

const char* to_string(FindingStatus s) noexcept {
  switch (s) {
  case FindingStatus::pass:
    return "pass";
  case FindingStatus::fail:
    return "fail";
  case FindingStatus::unknown_bounded:
    return "unknown-bounded";
  }
  return "?";
}

Int required_lambda_square(const ManifoldData& m, LevelVariant variant) {
  const Int base = variant == LevelVariant::level0 ? 2 : 4;
  return base - (m.euler_chi + m.signature_sigma);
}

HypothesisReport check_theorem_hypotheses(const ManifoldData& m, const LatticeVector& w,
                                          const LatticeVector& lambda, LevelVariant variant,
                                          const SearchOptions& search) {
  if (w.size() != m.rank())
    throw_dimension_mismatch("check_theorem_hypotheses (w)", m.rank(), w.size());
  if (lambda.size() != m.rank())
    throw_dimension_mismatch("check_theorem_hypotheses (lambda)", m.rank(), lambda.size());

  HypothesisReport report;
  report.variant = variant;
  report.w = w;
  report.lambda = lambda;
  report.target_square = required_lambda_square(m, variant);
  auto pass_fail = [](bool ok) { return ok ? FindingStatus::pass : FindingStatus::fail; };

  report.findings.push_back({"b_plus_odd_ge_3", pass_fail(m.b_plus % 2 != 0 && m.b_plus >= 3),
                             "b+ = " + std::to_string(m.b_plus)});
  report.findings.push_back({"sw_simple_type", pass_fail(m.sw_simple_type), "asserted input flag"});

  const auto basic = m.basic_classes();
  const Sublattice perp = orthogonal_complement(m.form, basic);
  auto pair = find_hyperbolic_pair(perp, search);
  if (pair.found()) {
    report.hyperbolic_witness = pair.witness;
    report.findings.push_back({"abundant", FindingStatus::pass,
                               "hyperbolic pair in B-perp (rank " + std::to_string(perp.rank()) + ")"});
  } else {
    report.findings.push_back({"abundant", FindingStatus::unknown_bounded,
                               std::string(to_string(pair.status)) + " at bound " + std::to_string(search.bound)});
  }

  bool orthogonal = std::all_of(basic.begin(), basic.end(),
                                [&](const LatticeVector& b) { return pairing(m.form, lambda, b) == 0; });
  report.findings.push_back({"lambda_in_b_perp", pass_fail(orthogonal), ""});

  const Int lsq = square(m.form, lambda);
  report.findings.push_back({"lambda_square", pass_fail(lsq == report.target_square),
                             "lambda^2 = " + std::to_string(lsq) + ", required " +
                                 std::to_string(report.target_square)});

  report.findings.push_back({"w_minus_lambda_congruent_w2", pass_fail(congruent_mod2(m.form, w, lambda, m.w2)), ""});

  bool any_fail = false, any_unknown = false;
  for (const auto& f : report.findings) {
    any_fail |= f.status == FindingStatus::fail;
    any_unknown |= f.status == FindingStatus::unknown_bounded;
  }
  report.verdict = any_fail ? FindingStatus::fail : any_unknown ? FindingStatus::unknown_bounded : FindingStatus::pass;

  if (is_integer(characteristic_number_c(m.euler_chi, m.signature_sigma)))
    report.mmp_vanishing = mmp_vanishing_check(m, w);
  return report;
}

std::string to_text(const HypothesisReport& report) {
  std::ostringstream os;
  os << "variant=" << to_string(report.variant) << '\n';
  os << "w=" << to_string(report.w) << '\n';
  os << "lambda=" << to_string(report.lambda) << '\n';
  os << "target_square=" << report.target_square << '\n';
  for (const auto& f : report.findings) {
    os << "hypothesis=" << f.name << " status=" << to_string(f.status) << '\n';
    if (f.status != FindingStatus::pass && !f.detail.empty())
      os << "# " << f.name << ": " << f.detail << '\n';
  }
  if (report.hyperbolic_witness)
    os << "witness=hyperbolic_pair e=" << to_string(report.hyperbolic_witness->e)
       << " f=" << to_string(report.hyperbolic_witness->f) << '\n';
  if (report.mmp_vanishing)
    os << "conclusion=mmp_vanishing status=" << to_string(*report.mmp_vanishing) << '\n';
  os << "verdict=" << to_string(report.verdict) << '\n';
  return os.str();
}

} // namespace dsw
