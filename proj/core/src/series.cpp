#include "dsw/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dsw/error.hpp"

namespace dsw {

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GradedOrder::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db)
    return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------
// FormalSeries

FormalSeries::FormalSeries(std::size_t num_vars, std::uint32_t degree_cap)
    : num_vars_(num_vars), degree_cap_(degree_cap) {}

FormalSeries FormalSeries::constant(std::size_t num_vars, std::uint32_t degree_cap, const Rational& c) {
  FormalSeries s(num_vars, degree_cap);
  s.add_term(Exponents(num_vars, 0), c);
  return s;
}

FormalSeries FormalSeries::variable(std::size_t num_vars, std::uint32_t degree_cap, std::size_t j) {
  if (j >= num_vars)
    throw Error(ErrorKind::invalid_argument, "FormalSeries::variable: index out of range");
  FormalSeries s(num_vars, degree_cap);
  Exponents e(num_vars, 0);
  e[j] = 1;
  s.add_term(e, 1);
  return s;
}

FormalSeries FormalSeries::linear_form(std::span<const Int> coeffs, std::uint32_t degree_cap) {
  FormalSeries s(coeffs.size(), degree_cap);
  Exponents e(coeffs.size(), 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0)
      continue;
    e[j] = 1;
    s.add_term(e, Rational(static_cast<long>(coeffs[j])));
    e[j] = 0;
  }
  return s;
}

void FormalSeries::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != num_vars_)
    throw_dimension_mismatch("FormalSeries::add_term", num_vars_, e.size());
  if (c == 0 || total_degree(e) >= degree_cap_)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Rational FormalSeries::coefficient(const Exponents& e) const {
  if (e.size() != num_vars_)
    throw_dimension_mismatch("FormalSeries::coefficient", num_vars_, e.size());
  if (total_degree(e) >= degree_cap_)
    throw Error(ErrorKind::not_checkable, "coefficient of degree " + std::to_string(total_degree(e)) +
                                              " is unknown below cap " + std::to_string(degree_cap_));
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FormalSeries::check_compatible(const FormalSeries& o, const char* where) const {
  if (num_vars_ != o.num_vars_)
    throw_dimension_mismatch(where, num_vars_, o.num_vars_);
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& o) {
  check_compatible(o, "FormalSeries::operator+");
  if (o.degree_cap_ < degree_cap_)
    *this = truncated(o.degree_cap_);
  for (const auto& [e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& o) {
  check_compatible(o, "FormalSeries::operator-");
  if (o.degree_cap_ < degree_cap_)
    *this = truncated(o.degree_cap_);
  for (const auto& [e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }

FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }

FormalSeries operator-(FormalSeries a) {
  for (auto& [e, c] : a.terms_)
    c = -c;
  return a;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  a.check_compatible(b, "FormalSeries::operator*");
  const std::uint32_t cap = std::min(a.degree_cap_, b.degree_cap_);
  FormalSeries out(a.num_vars_, cap);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    const auto da = total_degree(ea);
    if (da >= cap)
      break;
    for (const auto& [eb, cb] : b.terms_) {
      if (da + total_degree(eb) >= cap)
        break; // b is graded, so every later term is too large as well
      for (std::size_t j = 0; j < e.size(); ++j)
        e[j] = ea[j] + eb[j];
      out.terms_[e] += ca * cb;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

FormalSeries FormalSeries::scaled(const Rational& c) const {
  FormalSeries out(num_vars_, degree_cap_);
  if (c == 0)
    return out;
  out.terms_ = terms_;
  for (auto& [e, v] : out.terms_)
    v *= c;
  return out;
}

FormalSeries FormalSeries::truncated(std::uint32_t n) const {
  FormalSeries out(num_vars_, std::min(n, degree_cap_));
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) >= out.degree_cap_)
      break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

HomogeneousPolynomial FormalSeries::homogeneous_part(std::uint32_t d) const {
  if (d >= degree_cap_)
    throw Error(ErrorKind::not_checkable, "homogeneous part of degree " + std::to_string(d) +
                                              " is unknown below cap " + std::to_string(degree_cap_));
  FormalSeries out(num_vars_, degree_cap_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d)
      out.terms_.emplace_hint(out.terms_.end(), e, c);
  return HomogeneousPolynomial(std::move(out), d);
}

FormalSeries FormalSeries::derivative(std::size_t j) const {
  if (j >= num_vars_)
    throw Error(ErrorKind::invalid_argument, "FormalSeries::derivative: index out of range");
  FormalSeries out(num_vars_, degree_cap_ == 0 ? 0 : degree_cap_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0)
      continue;
    Exponents d = e;
    --d[j];
    out.add_term(d, c * e[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// HomogeneousPolynomial

HomogeneousPolynomial::HomogeneousPolynomial(FormalSeries series, std::uint32_t degree)
    : series_(std::move(series)), degree_(degree) {
  if (degree_ >= series_.degree_cap())
    throw Error(ErrorKind::invalid_argument, "homogeneous polynomial: degree " + std::to_string(degree_) +
                                                 " not below cap " + std::to_string(series_.degree_cap()));
  for (const auto& [e, c] : series_.terms())
    if (total_degree(e) != degree_)
      throw Error(ErrorKind::invalid_argument, "homogeneous polynomial: term " + monomial_text(e) +
                                                   " has degree " + std::to_string(total_degree(e)) +
                                                   ", expected " + std::to_string(degree_));
}

// ---------------------------------------------------------------------------
// Generators

FormalSeries power(const FormalSeries& s, std::uint32_t n) {
  FormalSeries out = FormalSeries::constant(s.num_vars(), s.degree_cap(), 1);
  for (std::uint32_t i = 0; i < n; ++i)
    out = out * s;
  return out;
}

namespace {

// sum_n p^n / n! for a series p without constant term.
FormalSeries exp_without_constant(const FormalSeries& p) {
  FormalSeries sum = FormalSeries::constant(p.num_vars(), p.degree_cap(), 1);
  FormalSeries term = sum;
  for (std::uint32_t n = 1;; ++n) {
    term = (term * p).scaled(Rational(1, n));
    if (term.is_zero())
      break;
    sum += term;
  }
  return sum;
}

} // namespace

FormalSeries exp_of_linear_form(std::span<const Int> kappa, std::uint32_t degree_cap) {
  return exp_without_constant(FormalSeries::linear_form(kappa, degree_cap));
}

FormalSeries exp_linear(const IntersectionForm& form, const LatticeVector& k, std::uint32_t degree_cap) {
  auto kappa = dual_pairings(form, k);
  return exp_of_linear_form(kappa, degree_cap);
}

FormalSeries quadratic_form_series(const IntersectionForm& form, std::uint32_t degree_cap) {
  const std::size_t n = form.rank();
  FormalSeries q(n, degree_cap);
  Exponents e(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const Int g = form(j, k);
      if (g == 0)
        continue;
      ++e[j];
      ++e[k];
      q.add_term(e, Rational(static_cast<long>(j == k ? g : 2 * g)));
      --e[j];
      --e[k];
    }
  }
  return q;
}

FormalSeries exp_quadratic(const IntersectionForm& form, std::uint32_t degree_cap) {
  return exp_without_constant(quadratic_form_series(form, degree_cap).scaled(Rational(1, 2)));
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

void check_comparable(const FormalSeries& a, const FormalSeries& b, std::uint32_t n) {
  if (a.num_vars() != b.num_vars())
    throw_dimension_mismatch("congruent_mod_degree", a.num_vars(), b.num_vars());
  if (n > a.degree_cap() || n > b.degree_cap())
    throw Error(ErrorKind::not_checkable,
                "cannot compare mod degree " + std::to_string(n) + ": series known only below degree " +
                    std::to_string(std::min(a.degree_cap(), b.degree_cap())));
}

} // namespace

std::optional<Exponents> first_difference(const FormalSeries& a, const FormalSeries& b, std::uint32_t n) {
  check_comparable(a, b, n);
  GradedOrder less;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  auto ea = a.terms().end();
  auto eb = b.terms().end();
  auto below = [n](auto it, auto end) { return it != end && total_degree(it->first) < n; };
  while (below(ia, ea) || below(ib, eb)) {
    if (!below(ib, eb))
      return ia->first;
    if (!below(ia, ea))
      return ib->first;
    if (less(ia->first, ib->first))
      return ia->first;
    if (less(ib->first, ia->first))
      return ib->first;
    if (ia->second != ib->second)
      return ia->first;
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

bool congruent_mod_degree(const FormalSeries& a, const FormalSeries& b, std::uint32_t n) {
  return !first_difference(a, b, n).has_value();
}

// ---------------------------------------------------------------------------
// Text

std::string monomial_text(const Exponents& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0)
      continue;
    if (!out.empty())
      out += ' ';
    out += 'h' + std::to_string(j + 1);
    if (e[j] > 1)
      out += '^' + std::to_string(e[j]);
  }
  return out;
}

std::string term_text(const Exponents& e, const Rational& c) {
  if (total_degree(e) == 0)
    return to_string(c);
  return to_string(c) + " * " + monomial_text(e);
}

std::string body_text(const FormalSeries& s) {
  if (s.is_zero())
    return "0\n";
  std::string out;
  for (const auto& [e, c] : s.terms()) {
    out += term_text(e, c);
    out += '\n';
  }
  return out;
}

std::string to_text(const FormalSeries& s) {
  return "series vars=" + std::to_string(s.num_vars()) + " cap=" + std::to_string(s.degree_cap()) + "\n" +
         body_text(s);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::uint64_t parse_unsigned(std::string_view s, std::string_view context) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw Error(ErrorKind::invalid_argument, "bad number in '" + std::string(context) + "'");
  return std::stoull(std::string(s));
}

} // namespace

Exponents parse_monomial(std::string_view text, std::size_t num_vars) {
  Exponents e(num_vars, 0);
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'h')
      throw Error(ErrorKind::invalid_argument, "bad monomial factor '" + tok + "'");
    std::string_view v(tok);
    v.remove_prefix(1);
    std::size_t caret = v.find('^');
    auto var = parse_unsigned(v.substr(0, caret), tok);
    std::uint64_t exp = caret == std::string_view::npos ? 1 : parse_unsigned(v.substr(caret + 1), tok);
    if (var < 1 || var > num_vars)
      throw Error(ErrorKind::invalid_argument, "variable out of range in '" + tok + "'");
    if (exp == 0)
      throw Error(ErrorKind::invalid_argument, "zero exponent in '" + tok + "'");
    e[var - 1] += static_cast<std::uint32_t>(exp);
  }
  return e;
}

FormalSeries parse_series_body(const std::vector<std::string>& lines, std::size_t num_vars,
                               std::uint32_t degree_cap) {
  FormalSeries s(num_vars, degree_cap);
  if (lines.size() == 1 && trim(lines[0]) == "0")
    return s;
  std::map<Exponents, bool, GradedOrder> seen;
  for (const auto& raw : lines) {
    std::string_view line = trim(raw);
    if (line.empty())
      continue;
    std::size_t star = line.find('*');
    Rational c = parse_rational(trim(line.substr(0, star)));
    Exponents e = star == std::string_view::npos ? Exponents(num_vars, 0)
                                                 : parse_monomial(line.substr(star + 1), num_vars);
    if (c == 0)
      throw Error(ErrorKind::invalid_argument, "zero coefficient in term '" + std::string(line) + "'");
    if (total_degree(e) >= degree_cap)
      throw Error(ErrorKind::invalid_argument, "term '" + std::string(line) + "' is at or beyond the cap");
    if (!seen.emplace(e, true).second)
      throw Error(ErrorKind::invalid_argument, "duplicate monomial '" + monomial_text(e) + "'");
    s.add_term(e, c);
  }
  return s;
}

FormalSeries parse_series(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorKind::invalid_argument, "empty series text");
  std::size_t vars = 0;
  std::uint32_t cap = 0;
  {
    std::istringstream header(line);
    std::string word, v, c;
    header >> word >> v >> c;
    if (word != "series" || v.rfind("vars=", 0) != 0 || c.rfind("cap=", 0) != 0)
      throw Error(ErrorKind::invalid_argument, "bad series header '" + line + "'");
    vars = parse_unsigned(std::string_view(v).substr(5), line);
    cap = static_cast<std::uint32_t>(parse_unsigned(std::string_view(c).substr(4), line));
  }
  while (std::getline(in, line))
    if (!trim(line).empty())
      lines.push_back(line);
  return parse_series_body(lines, vars, cap);
}

} // namespace dsw
