#include "dsw/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "dsw/error.hpp"
#include "dsw/invariants.hpp"
#include "dsw/manifold_io.hpp"
#include "dsw/monopole_levels.hpp"
#include "dsw/selftest.hpp"
#include "dsw/synthetic.hpp"
#include "dsw/universal_fit.hpp"

namespace dsw {

namespace {

namespace fs = std::filesystem;

constexpr int exit_selftest_failed = 1;

// Writes to --output when given, otherwise to `out`.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorKind::load, "cannot write '" + path + "'");
  f << text;
}

LatticeVector vector_or(const std::string& text, const LatticeVector& fallback, std::size_t rank,
                        const char* what) {
  if (text.empty())
    return fallback;
  LatticeVector v = parse_vector_csv(text);
  if (v.size() != rank)
    throw_dimension_mismatch(what, rank, v.size());
  return v;
}

std::uint32_t cap_for(Int n, const std::string& truncation) {
  if (n < 0)
    throw Error(ErrorKind::invalid_argument, "degree must be >= 0");
  return static_cast<std::uint32_t>(truncation == "inclusive" ? n + 1 : n);
}

int cmd_info(const std::string& file, std::ostream& out) {
  const ManifoldData m = load_manifold(file);
  const auto sig = signature_decomposition(m.form);
  std::ostringstream os;
  os << "name=" << m.name << '\n';
  os << "chi=" << m.euler_chi << '\n';
  os << "sigma=" << m.signature_sigma << '\n';
  os << "b_plus=" << m.b_plus << '\n';
  os << "rank=" << m.rank() << '\n';
  os << "c=" << to_string(characteristic_number_c(m.euler_chi, m.signature_sigma)) << '\n';
  os << "consistency=" << (m.consistency == Consistency::topological ? "topological" : "synthetic") << '\n';
  os << "form_parity=" << (is_even(m.form) ? "even" : "odd") << '\n';
  os << "form_sigma=" << sig.sigma << " form_b_plus=" << sig.b_plus << " form_b_minus=" << sig.b_minus << '\n';
  os << "w2=" << to_string(m.w2.lift()) << " characteristic=" << (is_characteristic(m.form, m.w2.lift()) ? "true" : "false")
     << '\n';
  os << "sw_simple_type=" << (m.sw_simple_type ? "true" : "false") << '\n';
  os << "spinc_entries=" << m.spinc_entries.size() << '\n';
  const Int base = 2 * m.euler_chi + 3 * m.signature_sigma;
  for (const auto& e : m.spinc_entries) {
    const Int sq = square(m.form, e.c1);
    os << "spinc c1=" << to_string(e.c1) << " sw=" << e.sw
       << " characteristic=" << (is_characteristic(m.form, e.c1) ? "true" : "false") << " c1_square=" << sq
       << " expected_dim=" << to_string(ratio(sq - base, 4)) << '\n';
  }
  for (const auto& w : simple_type_warnings(m))
    os << "warning: " << w << '\n';
  out << os.str();
  return 0;
}

int cmd_witten(const std::string& file, const std::string& w_text, Int degree, const std::string& truncation,
               const std::string& compare, const std::string& output, std::ostream& out) {
  const ManifoldData m = load_manifold(file);
  const LatticeVector w = vector_or(w_text, LatticeVector::zero(m.rank()), m.rank(), "--w");
  const std::uint32_t cap = cap_for(degree, truncation);
  const FormalSeries rhs = witten_rhs(m, w, cap);
  if (compare.empty()) {
    emit(out, output, to_text(rhs));
    return 0;
  }
  const KMData km = load_km(compare);
  validate(km, m.form);
  if (km.w.size() != m.rank())
    throw_dimension_mismatch("KM file w", m.rank(), km.w.size());
  const FormalSeries lhs = km_series(km, m.form, cap);
  const auto diff = first_difference(rhs, lhs, cap);
  std::ostringstream os;
  if (!diff) {
    os << "congruent mod " << degree << (truncation == "inclusive" ? " (inclusive)" : "") << '\n';
    emit(out, output, os.str());
    return 0;
  }
  os << "first difference at " << (total_degree(*diff) == 0 ? std::string("1") : monomial_text(*diff))
     << ": witten=" << to_string(rhs.coefficient(*diff)) << " km=" << to_string(lhs.coefficient(*diff)) << '\n';
  emit(out, output, os.str());
  return exit_code(ErrorKind::inconsistency);
}

int cmd_km(const std::string& file, const std::string& w_text, Int degree, const std::string& output,
           std::ostream& out, std::ostream& err) {
  const ManifoldData m = load_manifold(file);
  const LatticeVector w = vector_or(w_text, LatticeVector::zero(m.rank()), m.rank(), "--w");
  const std::uint32_t cap = cap_for(degree, "strict");
  auto candidates = m.basic_classes();
  std::sort(candidates.begin(), candidates.end());
  if (candidates.empty()) {
    emit(out, output, serialize(KMData{w, {}}));
    return 0;
  }
  const KMFit fit = fit_km_coefficients(witten_rhs(m, w, cap), candidates, w, m.form, cap);
  if (!fit.witness && fit.status == SolveStatus::underdetermined)
    err << "warning: KM coefficients underdetermined below degree " << degree << " (nullspace "
        << fit.nullspace_dim << ")\n";
  if (fit.witness) {
    err << "error: no KM data fits below degree " << degree << "; first failing monomial "
        << monomial_text(*fit.witness) << '\n';
    return exit_code(ErrorKind::inconsistency);
  }
  for (std::size_t r : fit.zero_coefficients)
    err << "note: candidate " << to_string(candidates[r]) << " has a = 0\n";
  emit(out, output, serialize(fit.to_km_data(w, candidates)));
  return 0;
}

int cmd_hypotheses(const std::string& file, const std::string& lambda_text, bool search, const std::string& variant,
                   Int bound, const std::string& w_text, std::ostream& out) {
  const ManifoldData m = load_manifold(file, ValidationOptions{.standing_b_plus = false});
  const LevelVariant v = variant == "level1" ? LevelVariant::level1 : LevelVariant::level0;
  SearchOptions opts;
  opts.bound = bound;
  std::ostringstream os;
  LatticeVector lambda;
  if (search) {
    const Int target = required_lambda_square(m, v);
    const Sublattice perp = orthogonal_complement(m.form, m.basic_classes());
    const auto found = find_vector_with_square(perp, target, opts);
    os << "search=lambda target_square=" << target << " status=" << to_string(found.status)
       << " visited=" << found.visited << '\n';
    if (!found.found()) {
      os << "hypothesis=lambda_exists status=unknown-bounded\n";
      os << "verdict=unknown-bounded\n";
      out << os.str();
      return 0;
    }
    lambda = *found.witness;
  } else {
    lambda = vector_or(lambda_text, {}, m.rank(), "--lambda");
  }
  const LatticeVector w = vector_or(w_text, lambda + m.w2.lift(), m.rank(), "--w");
  os << to_text(check_theorem_hypotheses(m, w, lambda, v, opts));
  out << os.str();
  return 0;
}

int cmd_levels(const std::string& file, const std::string& lambda_text, Int delta, Int m_power, Int ell_max,
               const std::string& w_text, std::ostream& out, std::ostream& err) {
  const ManifoldData m = load_manifold(file);
  const LatticeVector lambda = vector_or(lambda_text, {}, m.rank(), "--lambda");
  const LatticeVector w = vector_or(w_text, lambda + m.w2.lift(), m.rank(), "--w");
  std::ostringstream os;
  const Rational il = i_lambda(square(m.form, lambda), m.euler_chi, m.signature_sigma);
  os << "delta=" << delta << " m=" << m_power << " ell_max=" << ell_max << '\n';
  os << "lambda=" << to_string(lambda) << '\n';
  os << "w=" << to_string(w) << '\n';
  os << "i_lambda=" << to_string(il) << '\n';
  const bool admissible = delta_admissible(delta, square(m.form, w), m.euler_chi, m.signature_sigma);
  os << "delta_admissible=" << (admissible ? "true" : "false") << '\n';
  os << "delta_below_i_lambda=" << (check_delta_window(delta, il) ? "true" : "false") << '\n';
  if (!admissible) {
    out << os.str();
    err << "error: delta = " << delta << " is not admissible for w = " << to_string(w) << '\n';
    return exit_code(ErrorKind::refusal);
  }
  const auto list = enumerate_contributions(m, w, lambda, delta, m_power, ell_max);
  os << "contributions=" << list.contributions.size() << '\n';
  for (const auto& c : list.contributions)
    os << "contribution ell=" << c.ell << " c1=" << to_string(c.entry.c1) << " sw=" << c.entry.sw
       << " sign=" << c.sign << " i_range_max=" << c.i_range_max << '\n';
  for (const auto& n : list.notes)
    os << "# " << n << '\n';
  out << os.str();
  return 0;
}

int cmd_fit(const std::string& file, std::ostream& out) {
  const FitProblem problem = load_fit_problem(file);
  const FitReport report = solve_coefficients(problem);
  std::ostringstream os;
  os << to_text(report, problem);
  int code = 0;
  if (!report.consistent()) {
    code = exit_code(ErrorKind::inconsistency);
  } else {
    const auto check = validate_solution(problem, report);
    os << "validation=" << (check.ok ? "ok" : "failed") << '\n';
    for (const auto& f : check.findings)
      os << "# " << f << '\n';
    if (!check.ok)
      code = exit_code(ErrorKind::inconsistency);
  }
  out << os.str();
  return code;
}

int cmd_selftest(bool inject_fault, std::uint64_t seed, std::ostream& out) {
  SelfTestOptions opts;
  opts.inject_fault = inject_fault;
  opts.seed = seed;
  bool ok = true;
  for (const auto& r : run_selftest(opts)) {
    out << "suite=" << r.suite << " status=" << (r.passed ? "pass" : "fail") << " cases=" << r.cases << '\n';
    if (!r.passed)
      out << "# " << r.detail << '\n';
    ok = ok && r.passed;
  }
  out << "selftest=" << (ok ? "pass" : "fail") << '\n';
  return ok ? 0 : exit_selftest_failed;
}

int cmd_synth(std::uint64_t seed, Int count, const std::string& outdir, std::ostream& out) {
  if (count < 0)
    throw Error(ErrorKind::invalid_argument, "--count must be >= 0");
  std::mt19937_64 rng(seed);
  fs::create_directories(outdir);
  for (Int k = 0; k < count; ++k) {
    ManifoldData m = random_synthetic_manifold(rng);
    std::ostringstream name;
    name << "synthetic_" << std::setw(2) << std::setfill('0') << k + 1;
    m.name = name.str();
    const fs::path path = fs::path(outdir) / (name.str() + ".manifold");
    std::ofstream f(path, std::ios::binary);
    if (!f)
      throw Error(ErrorKind::load, "cannot write '" + path.string() + "'");
    f << "# synthetic Witten-consistent fixture, seed " << seed << " index " << k + 1 << "\n" << serialize(m);
    out << path.string() << '\n';
  }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cross-checks between Donaldson and Seiberg-Witten invariants", "dsw"};
  app.require_subcommand(1);

  std::string file, w_text, lambda_text, compare, output, variant = "level0", truncation = "strict", outdir = ".";
  Int degree = 12, bound = 20, delta = 0, m_power = 0, ell_max = 3, count = 10;
  bool search = false, inject_fault = false;
  std::uint64_t seed = 20240531;

  auto* info = app.add_subcommand("info", "Summarize a manifold file");
  info->add_option("file", file, "Manifold file")->required();

  auto* witten = app.add_subcommand("witten", "Right-hand side of Witten's formula as canonical series text");
  witten->add_option("file", file, "Manifold file")->required();
  witten->add_option("--w", w_text, "Class w, comma-separated (default 0)");
  witten->add_option("--degree,-N", degree, "Degree cap N")->capture_default_str()->check(CLI::NonNegativeNumber);
  witten->add_option("--truncation", truncation, "strict (< N) or inclusive (<= N)")
      ->capture_default_str()
      ->check(CLI::IsMember({"strict", "inclusive"}));
  witten->add_option("--compare", compare, "KM file to compare against");
  witten->add_option("--output,-o", output, "Write to this path instead of stdout");

  auto* km = app.add_subcommand("km", "Fit KM data to Witten's formula and write a KM file");
  km->add_option("file", file, "Manifold file")->required();
  km->add_option("--w", w_text, "Class w, comma-separated (default 0)");
  km->add_option("--degree,-N", degree, "Degree cap N")->capture_default_str()->check(CLI::NonNegativeNumber);
  km->add_option("--output,-o", output, "Write to this path instead of stdout");

  auto* hyp = app.add_subcommand("hypotheses", "Check the level-0 / level-1 theorem hypotheses");
  hyp->add_option("file", file, "Manifold file")->required();
  auto* lam = hyp->add_option("--lambda", lambda_text, "Class Lambda, comma-separated");
  auto* srch = hyp->add_flag("--search", search, "Search B-perp for Lambda of the required square");
  lam->excludes(srch);
  hyp->add_option("--variant", variant, "level0 or level1")
      ->capture_default_str()
      ->check(CLI::IsMember({"level0", "level1"}));
  hyp->add_option("--bound", bound, "Search bound")->capture_default_str()->check(CLI::PositiveNumber);
  hyp->add_option("--w", w_text, "Class w (default Lambda + lift(w2))");

  auto* lev = app.add_subcommand("levels", "Level bookkeeping for the spin-c entries");
  lev->add_option("file", file, "Manifold file")->required();
  lev->add_option("--lambda", lambda_text, "Class Lambda, comma-separated")->required();
  lev->add_option("--delta", delta, "delta")->required()->check(CLI::NonNegativeNumber);
  lev->add_option("--m", m_power, "Power of x")->capture_default_str()->check(CLI::NonNegativeNumber);
  lev->add_option("--ell-max", ell_max, "Largest level kept")->capture_default_str();
  lev->add_option("--w", w_text, "Class w (default Lambda + lift(w2))");

  auto* fit = app.add_subcommand("fit", "Solve for the universal coefficients of the rough structure formula");
  fit->add_option("file", file, "Observation file")->required();

  auto* self = app.add_subcommand("selftest", "Run the bundled invariant suites");
  self->add_flag("--inject-fault", inject_fault, "Flip the sign of recovered KM coefficients");
  self->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Write random synthetic Witten-consistent manifold files");
  synth->add_option("--seed", seed, "Random seed")->capture_default_str();
  synth->add_option("--count", count, "Number of files")->capture_default_str();
  synth->add_option("--outdir", outdir, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::invalid_argument);
  }

  try {
    if (info->parsed())
      return cmd_info(file, out);
    if (witten->parsed())
      return cmd_witten(file, w_text, degree, truncation, compare, output, out);
    if (km->parsed())
      return cmd_km(file, w_text, degree, output, out, err);
    if (hyp->parsed()) {
      if (!search && lambda_text.empty())
        throw Error(ErrorKind::invalid_argument, "hypotheses needs --lambda or --search");
      return cmd_hypotheses(file, lambda_text, search, variant, bound, w_text, out);
    }
    if (lev->parsed())
      return cmd_levels(file, lambda_text, delta, m_power, ell_max, w_text, out, err);
    if (fit->parsed())
      return cmd_fit(file, out);
    if (self->parsed())
      return cmd_selftest(inject_fault, seed, out);
    if (synth->parsed())
      return cmd_synth(seed, count, outdir, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(ErrorKind::invalid_argument);
  }
  return exit_code(ErrorKind::invalid_argument);
}

} // namespace dsw
