#include "dsw/selftest.hpp"

#include <random>

#include "dsw/error.hpp"
#include "dsw/invariants.hpp"
#include "dsw/monopole_levels.hpp"
#include "dsw/synthetic.hpp"
#include "dsw/universal_fit.hpp"

namespace dsw {

namespace {

template <class F>
SelfTestResult suite(std::string name, std::size_t cases, F&& body) {
  SelfTestResult r{std::move(name), true, cases, {}};
  try {
    for (std::size_t k = 0; k < cases && r.passed; ++k) {
      std::string why = body(k);
      if (!why.empty()) {
        r.passed = false;
        r.detail = "case " + std::to_string(k) + ": " + why;
      }
    }
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

} // namespace

std::vector<SelfTestResult> run_selftest(const SelfTestOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<SelfTestResult> out;

  out.push_back(suite("exp-identities", 10, [&](std::size_t) -> std::string {
    const auto form = random_form(rng, 4);
    const std::uint32_t cap = 8;
    const auto one = FormalSeries::constant(form.rank(), cap, 1);
    if (exp_quadratic(form, cap) * exp_quadratic(negated(form), cap) != one)
      return "exp(Q/2) exp(-Q/2) != 1";
    const auto k1 = random_characteristic(rng, form, 1);
    const auto k2 = random_characteristic(rng, form, 1);
    if (exp_linear(form, k1, cap) * exp_linear(form, k2, cap) != exp_linear(form, k1 + k2, cap))
      return "exp(K1) exp(K2) != exp(K1+K2)";
    return {};
  }));

  out.push_back(suite("parity-lemma", 50, [&](std::size_t) -> std::string {
    const auto form = random_form(rng, 6);
    const auto k = random_characteristic(rng, form, 2);
    LatticeVector w = LatticeVector::zero(form.rank());
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = std::uniform_int_distribution<Int>(-3, 3)(rng);
    if ((square(form, w) + pairing(form, w, k)) % 2 != 0)
      return "w^2 + w.K odd for w = " + to_string(w) + ", K = " + to_string(k);
    return {};
  }));

  out.push_back(suite("km-round-trip", 8, [&](std::size_t) -> std::string {
    const auto man = random_synthetic_manifold(rng);
    const auto w = man.w2.lift();
    const std::uint32_t cap = 6;
    const auto target = witten_rhs(man, w, cap);
    const auto expected = witten_km_data(man, w);
    std::vector<LatticeVector> candidates;
    for (const auto& t : expected.terms)
      candidates.push_back(t.k);
    const auto fit = fit_km_coefficients(target, candidates, w, man.form, cap);
    if (fit.status != SolveStatus::unique)
      return std::string("fit status ") + to_string(fit.status);
    for (std::size_t r = 0; r < candidates.size(); ++r) {
      const Rational got = opts.inject_fault ? Rational(-fit.coefficients[r]) : fit.coefficients[r];
      if (got != expected.terms[r].a)
        return "a_" + std::to_string(r) + " = " + to_string(got) + ", expected " + to_string(expected.terms[r].a);
    }
    return {};
  }));

  out.push_back(suite("level-coupling", 50, [&](std::size_t) -> std::string {
    const auto form = random_form(rng, 4);
    const auto sig = signature_decomposition(form);
    const auto c1 = random_characteristic(rng, form, 2);
    LatticeVector lambda = LatticeVector::zero(form.rank());
    for (std::size_t j = 0; j < lambda.size(); ++j)
      lambda[j] = std::uniform_int_distribution<Int>(-2, 2)(rng);
    const LatticeVector w = lambda + c1;
    const Int sigma = sig.sigma;
    const Int chi = 2 * (1 + sig.b_plus) - sigma;
    for (Int delta = 0; delta <= 12; ++delta) {
      if (!delta_admissible(delta, square(form, w), chi, sigma))
        continue;
      if (!is_integer(level_value(delta, c1, lambda, form, chi, sigma)))
        return "non-integral level at delta = " + std::to_string(delta);
      if (level_value(delta + 4, c1, lambda, form, chi, sigma) != level_value(delta, c1, lambda, form, chi, sigma) + 1)
        return "delta + 4 does not shift the level by 1";
    }
    return {};
  }));

  out.push_back(suite("universal-fit-round-trip", 4, [&](std::size_t k) -> std::string {
    const Int delta = 2 + 2 * static_cast<Int>(k % 2);
    const auto inst = make_fit_instance(rng, delta, 0);
    FitProblem problem{delta, 0, {witten_observation("selftest", inst.manifold, inst.w, inst.lambda, delta, 0)}};
    const auto report = solve_coefficients(problem);
    if (!report.consistent())
      return "fit reported inconsistent";
    const auto check = validate_solution(problem, report);
    if (!check.ok)
      return check.findings.front();
    return {};
  }));

  return out;
}

} // namespace dsw
