#include "dsw/universal_fit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dsw/error.hpp"
#include "dsw/monopole_levels.hpp"

namespace dsw {

std::size_t CoefficientTemplate::unknown_count() const {
  std::size_t n = 0;
  for (const auto& e : entries)
    n += static_cast<std::size_t>(e.degree + 1);
  return n;
}

CoefficientTemplate build_template(Int delta, Int m, Int ell) {
  if (delta < 0 || m < 0 || m > delta / 2)
    throw Error(ErrorKind::invalid_argument, "build_template: need 0 <= m <= floor(delta/2), got delta = " +
                                                 std::to_string(delta) + ", m = " + std::to_string(m));
  if (ell < 0)
    throw Error(ErrorKind::invalid_argument, "build_template: negative level " + std::to_string(ell));
  CoefficientTemplate t{delta, m, ell, {}};
  const Int i_max = std::min(ell, delta / 2 - m);
  for (Int i = 0; i <= i_max; ++i)
    t.entries.push_back({i, delta - 2 * m - 2 * i});
  return t;
}

std::vector<std::string> template_violations(const CoefficientTemplate& t) {
  std::vector<std::string> out;
  const Int i_max = std::min(t.ell, t.delta / 2 - t.m);
  for (const auto& e : t.entries) {
    if (e.i < 0 || e.i > i_max)
      out.push_back("i = " + std::to_string(e.i) + " outside [0, " + std::to_string(i_max) + "]");
    if (e.degree != t.delta - 2 * t.m - 2 * e.i)
      out.push_back("entry i = " + std::to_string(e.i) + " has degree " + std::to_string(e.degree) +
                    ", expected " + std::to_string(t.delta - 2 * t.m - 2 * e.i));
  }
  return out;
}

std::string to_string(const ParameterSignature& s) {
  std::ostringstream os;
  os << "chi=" << s.chi << " sigma=" << s.sigma << " c1^2=" << s.c1_sq << " lambda^2=" << s.lambda_sq
     << " c1.lambda=" << s.c1_lambda << " delta=" << s.delta << " m=" << s.m << " ell=" << s.ell;
  return os.str();
}

std::string label(const UnknownKey& k) {
  std::ostringstream os;
  os << "p[" << k.signature.delta << ',' << k.signature.ell << ',' << k.signature.m << ',' << k.i << "][" << k.j
     << ']';
  return os.str();
}

FormalSeries LinearPolynomial::substitute(const std::map<UnknownKey, Rational>& values) const {
  FormalSeries out(num_vars, degree + 1);
  for (const auto& [key, column] : columns) {
    auto it = values.find(key);
    if (it != values.end() && it->second != 0)
      out += column.scaled(it->second);
  }
  return out;
}

const char* to_string(LhsSource s) noexcept {
  return s == LhsSource::user_table ? "user-table" : "point-evaluate(x->2)";
}

namespace {

// Cached powers of one series.
class Powers {
public:
  explicit Powers(FormalSeries base) : cache_{FormalSeries::constant(base.num_vars(), base.degree_cap(), 1)},
                                       base_(std::move(base)) {}
  const FormalSeries& operator()(Int n) {
    while (static_cast<Int>(cache_.size()) <= n)
      cache_.push_back(cache_.back() * base_);
    return cache_[static_cast<std::size_t>(n)];
  }

private:
  std::vector<FormalSeries> cache_;
  FormalSeries base_;
};

} // namespace

LinearPolynomial assemble_rough_rhs(const ManifoldData& manifold, const LatticeVector& w,
                                    const LatticeVector& lambda, Int delta, Int m) {
  if (delta < 0 || m < 0 || m > delta / 2)
    throw Error(ErrorKind::invalid_argument, "assemble_rough_rhs: need 0 <= m <= floor(delta/2)");
  const auto& form = manifold.form;
  const Int chi = manifold.euler_chi;
  const Int sigma = manifold.signature_sigma;
  if (!delta_admissible(delta, square(form, w), chi, sigma))
    throw Error(ErrorKind::refusal, "delta = " + std::to_string(delta) + " is not admissible: need delta == -w^2 - " +
                                        "3(chi+sigma)/4 (mod 4)");

  const Int total = delta - 2 * m;
  const auto cap = static_cast<std::uint32_t>(total + 1);
  LinearPolynomial out;
  out.num_vars = form.rank();
  out.degree = static_cast<std::uint32_t>(total);

  Powers q_pow(quadratic_form_series(form, cap));
  Powers b_pow(FormalSeries::linear_form(dual_pairings(form, lambda), cap));
  const Int lambda_sq = square(form, lambda);
  const Int i_cap = delta / 2 - m;

  std::vector<const SpincEntry*> entries;
  for (const auto& e : manifold.spinc_entries)
    if (e.sw != 0)
      entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->c1 < b->c1; });

  for (const auto* e : entries) {
    const Rational ell_value = level_value(delta, e->c1, lambda, form, chi, sigma);
    if (!is_integer(ell_value) || ell_value < 0) {
      out.notes.push_back("c1 = " + to_string(e->c1) + ": level " + to_string(ell_value) +
                          (is_integer(ell_value) ? " is negative" : " is non-integral") + ", skipped");
      continue;
    }
    const Int ell = to_int64(ell_value);
    const ParameterSignature sig{chi,       sigma,
                                 square(form, e->c1), lambda_sq,
                                 pairing(form, e->c1, lambda), delta,
                                 m,         ell};
    const CoefficientTemplate tmpl = build_template(delta, m, ell);
    const LatticeVector a = e->c1 - lambda;
    Powers a_pow(FormalSeries::linear_form(dual_pairings(form, a), cap));
    const Rational weight(sign_factor(form, w, e->c1) * e->sw);

    for (const auto& entry : tmpl.entries) {
      if (entry.i > std::min(ell, i_cap))
        throw Error(ErrorKind::inconsistency, "assemble_rough_rhs: i-range violated");
      const FormalSeries& qi = q_pow(entry.i);
      for (Int j = 0; j <= entry.degree; ++j) {
        FormalSeries column = (a_pow(j) * b_pow(entry.degree - j) * qi).scaled(weight);
        // Degree discipline: every p Q^i term is homogeneous of degree delta - 2m.
        HomogeneousPolynomial checked(std::move(column), out.degree);
        auto [it, inserted] = out.columns.try_emplace(UnknownKey{sig, entry.i, j}, checked.series());
        if (!inserted)
          it->second += checked.series();
      }
    }
  }
  return out;
}

Observation witten_observation(std::string label, ManifoldData manifold, LatticeVector w, LatticeVector lambda,
                               Int delta, Int m) {
  if (delta < 0 || m < 0 || m > delta / 2)
    throw Error(ErrorKind::invalid_argument, "witten_observation: need 0 <= m <= floor(delta/2)");
  const KMData km = witten_km_data(manifold, w);
  HomogeneousPolynomial lhs =
      point_evaluate(km, manifold.form, static_cast<std::uint32_t>(delta), static_cast<std::uint32_t>(m));
  return Observation{std::move(label), std::move(manifold), std::move(w), std::move(lambda), std::move(lhs),
                     LhsSource::point_evaluate_x2};
}

std::map<UnknownKey, Rational> FitReport::solution_map() const {
  std::map<UnknownKey, Rational> out;
  for (std::size_t u = 0; u < values.size() && u < unknowns.size(); ++u)
    out.emplace(unknowns[u], values[u]);
  return out;
}

FitReport solve_coefficients(const FitProblem& problem) {
  if (problem.observations.empty())
    throw Error(ErrorKind::invalid_argument, "solve_coefficients: empty problem");
  const Int total = problem.delta - 2 * problem.m;

  std::vector<LinearPolynomial> assembled;
  FitReport report;
  report.delta = problem.delta;
  report.m = problem.m;
  std::set<UnknownKey> keys;
  for (std::size_t k = 0; k < problem.observations.size(); ++k) {
    const auto& obs = problem.observations[k];
    if (obs.lhs.degree() != total)
      throw Error(ErrorKind::invalid_argument, "observation " + std::to_string(k + 1) + ": LHS degree " +
                                                   std::to_string(obs.lhs.degree()) + ", expected " +
                                                   std::to_string(total));
    if (obs.lhs.series().num_vars() != obs.manifold.rank())
      throw_dimension_mismatch("observation LHS", obs.manifold.rank(), obs.lhs.series().num_vars());
    assembled.push_back(assemble_rough_rhs(obs.manifold, obs.w, obs.lambda, problem.delta, problem.m));
    report.notes.push_back("observation " + std::to_string(k + 1) + " (" + obs.label + "): lhs source " +
                           to_string(obs.source));
    for (const auto& n : assembled.back().notes)
      report.notes.push_back("observation " + std::to_string(k + 1) + ": " + n);
    for (const auto& [key, col] : assembled.back().columns)
      keys.insert(key);
  }
  report.unknowns.assign(keys.begin(), keys.end());
  std::map<UnknownKey, std::size_t> index;
  for (std::size_t u = 0; u < report.unknowns.size(); ++u)
    index.emplace(report.unknowns[u], u);

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<FitWitness> row_origin;
  for (std::size_t k = 0; k < assembled.size(); ++k) {
    const auto& lin = assembled[k];
    const auto& lhs = problem.observations[k].lhs.series();
    std::set<Exponents, GradedOrder> monomials;
    for (const auto& [e, c] : lhs.terms())
      monomials.insert(e);
    for (const auto& [key, col] : lin.columns)
      for (const auto& [e, c] : col.terms())
        monomials.insert(e);
    for (const auto& e : monomials) {
      std::vector<Rational> row(report.unknowns.size(), 0);
      for (const auto& [key, col] : lin.columns) {
        auto it = col.terms().find(e);
        if (it != col.terms().end())
          row[index.at(key)] = it->second;
      }
      auto it = lhs.terms().find(e);
      rows.push_back(std::move(row));
      rhs.push_back(it == lhs.terms().end() ? Rational(0) : it->second);
      row_origin.push_back({k, e});
    }
  }
  report.equations = rows.size();

  const LinearSolution sol = solve_exact(std::move(rows), std::move(rhs), report.unknowns.size());
  report.status = sol.status;
  report.nullspace_dim = sol.nullspace_dim;
  if (!sol.consistent()) {
    report.witness = row_origin.at(*sol.inconsistent_row);
    return report;
  }
  report.values = sol.values;
  report.free = sol.free;
  return report;
}

SolutionCheck validate_solution(const FitProblem& problem, const FitReport& report) {
  SolutionCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.findings.push_back(std::move(msg));
  };
  if (!report.consistent()) {
    fail("report is inconsistent; nothing to validate");
    return check;
  }
  if (report.values.size() != report.unknowns.size()) {
    fail("solution has " + std::to_string(report.values.size()) + " values for " +
         std::to_string(report.unknowns.size()) + " unknowns");
    return check;
  }
  const Int total = problem.delta - 2 * problem.m;
  std::set<ParameterSignature> groups;
  for (const auto& key : report.unknowns) {
    groups.insert(key.signature);
    const Int i_max = std::min(key.signature.ell, key.signature.delta / 2 - key.signature.m);
    if (key.i < 0 || key.i > i_max)
      fail(label(key) + ": i outside [0, " + std::to_string(i_max) + "]");
    const Int degree = key.signature.delta - 2 * key.signature.m - 2 * key.i;
    if (key.j < 0 || key.j > degree)
      fail(label(key) + ": j outside [0, " + std::to_string(degree) + "]");
  }
  for (const auto& g : groups)
    for (const auto& v : template_violations(build_template(g.delta, g.m, g.ell)))
      fail("template " + to_string(g) + ": " + v);

  const auto values = report.solution_map();
  for (std::size_t k = 0; k < problem.observations.size(); ++k) {
    const auto& obs = problem.observations[k];
    const LinearPolynomial lin = assemble_rough_rhs(obs.manifold, obs.w, obs.lambda, problem.delta, problem.m);
    for (const auto& [key, col] : lin.columns) {
      if (!values.contains(key))
        fail("observation " + std::to_string(k + 1) + ": unknown " + label(key) + " missing from solution");
      for (const auto& [e, c] : col.terms())
        if (static_cast<Int>(total_degree(e)) != total) {
          fail("observation " + std::to_string(k + 1) + ": " + label(key) + " term " + monomial_text(e) +
               " is not of degree " + std::to_string(total));
          break;
        }
    }
    const FormalSeries residual = lin.substitute(values) - obs.lhs.series();
    if (!residual.is_zero())
      fail("observation " + std::to_string(k + 1) + ": nonzero residual at " +
           monomial_text(residual.terms().begin()->first));
  }
  return check;
}

std::string to_text(const FitReport& report, const FitProblem& problem) {
  std::ostringstream os;
  os << "fit delta=" << report.delta << " m=" << report.m << '\n';
  os << "status=" << to_string(report.status) << " unknowns=" << report.unknowns.size()
     << " equations=" << report.equations << " nullspace_dim=" << report.nullspace_dim << '\n';
  os << "convention: x acts as 2 for point-evaluated observations\n";
  for (const auto& n : report.notes)
    os << "# " << n << '\n';
  if (report.witness) {
    const auto& w = *report.witness;
    os << "witness observation=" << w.observation + 1 << " (" << problem.observations.at(w.observation).label
       << ") monomial=" << (total_degree(w.monomial) == 0 ? std::string("1") : monomial_text(w.monomial)) << '\n';
    return os.str();
  }

  std::map<ParameterSignature, std::vector<std::size_t>> groups;
  for (std::size_t u = 0; u < report.unknowns.size(); ++u)
    groups[report.unknowns[u].signature].push_back(u);
  std::size_t g = 0;
  for (const auto& [sig, members] : groups) {
    os << "group " << ++g << ' ' << to_string(sig) << '\n';
    for (std::size_t u : members) {
      os << label(report.unknowns[u]) << " = ";
      if (report.free[u])
        os << "free";
      else
        os << to_string(report.values[u]);
      os << '\n';
    }
  }

  // Universality across signature groups sharing (delta, m, ell).
  std::vector<std::pair<ParameterSignature, std::vector<std::size_t>>> list(groups.begin(), groups.end());
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = a + 1; b < list.size(); ++b) {
      const auto& sa = list[a].first;
      const auto& sb = list[b].first;
      if (sa.delta != sb.delta || sa.m != sb.m || sa.ell != sb.ell)
        continue;
      const auto& ua = list[a].second;
      const auto& ub = list[b].second;
      std::string verdict = "agree";
      if (ua.size() != ub.size()) {
        verdict = "differ";
      } else {
        for (std::size_t k = 0; k < ua.size(); ++k) {
          if (report.free[ua[k]] || report.free[ub[k]]) {
            verdict = "undetermined";
            break;
          }
          if (report.values[ua[k]] != report.values[ub[k]])
            verdict = "differ";
        }
      }
      os << "compare group " << a + 1 << " vs group " << b + 1 << ": " << verdict << '\n';
    }
  return os.str();
}

} // namespace dsw
