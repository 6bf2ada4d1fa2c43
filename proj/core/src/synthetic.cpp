#include "dsw/synthetic.hpp"

#include <algorithm>
#include <set>

#include "dsw/error.hpp"
#include "dsw/monopole_levels.hpp"

namespace dsw {

namespace {

Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

std::vector<IntersectionForm> base_forms(std::size_t min_rank, std::size_t max_rank) {
  const auto h = hyperbolic_plane();
  std::vector<IntersectionForm> all;
  for (Int k = 0; k <= 3; ++k) {
    std::vector<Int> d(3, 1);
    d.insert(d.end(), static_cast<std::size_t>(k), -1);
    all.push_back(diagonal_form(d));
  }
  for (Int k = 0; k <= 1; ++k) {
    std::vector<Int> d(5, 1);
    d.insert(d.end(), static_cast<std::size_t>(k), -1);
    all.push_back(diagonal_form(d));
  }
  all.push_back(direct_sum({h, h, h}));
  all.push_back(direct_sum({h, h, diagonal_form({1, -1})}));
  all.push_back(direct_sum({h, diagonal_form({1, 1, -1})}));
  all.push_back(direct_sum({h, diagonal_form({1, 1})}));
  std::vector<IntersectionForm> out;
  for (auto& f : all)
    if (f.rank() >= min_rank && f.rank() <= max_rank)
      out.push_back(std::move(f));
  return out;
}

IntersectionForm scramble(std::mt19937_64& rng, const IntersectionForm& form, int steps) {
  auto g = form.gram();
  const std::size_t n = g.size();
  if (n < 2)
    return form;
  for (int step = 0; step < steps; ++step) {
    // e_j <- e_j + s e_i
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(n) - 2));
    if (j >= i)
      ++j;
    const Int s = uniform(rng, 0, 1) ? 1 : -1;
    auto next = g;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j)
        next[j][k] = next[k][j] = g[j][k] + s * g[i][k];
    next[j][j] = g[j][j] + 2 * s * g[i][j] + s * s * g[i][i];
    bool small = true;
    for (const auto& row : next)
      for (Int x : row)
        small = small && x >= -4 && x <= 4;
    if (small)
      g = std::move(next);
  }
  return IntersectionForm(g);
}

IntersectionForm random_form_between(std::mt19937_64& rng, std::size_t min_rank, std::size_t max_rank,
                                     int steps) {
  const auto forms = base_forms(min_rank, max_rank);
  if (forms.empty())
    throw Error(ErrorKind::invalid_argument, "no base form with rank in [" + std::to_string(min_rank) + ", " +
                                                 std::to_string(max_rank) + "]");
  const auto& base = forms[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(forms.size()) - 1))];
  return scramble(rng, base, steps);
}

Int nonzero_sw(std::mt19937_64& rng, Int sw_max) {
  Int v = uniform(rng, 1, sw_max);
  return uniform(rng, 0, 1) ? v : -v;
}

} // namespace

IntersectionForm random_form(std::mt19937_64& rng, std::size_t max_rank) {
  return random_form_between(rng, 1, max_rank, 3);
}

LatticeVector random_characteristic(std::mt19937_64& rng, const IntersectionForm& form, Int spread) {
  LatticeVector k = characteristic_representative(form);
  for (std::size_t j = 0; j < k.size(); ++j)
    k[j] += 2 * uniform(rng, -spread, spread);
  return k;
}

std::pair<Int, Int> chi_sigma_for_c(Int c, Int b_plus) {
  if (b_plus % 2 == 0)
    throw Error(ErrorKind::invalid_argument, "chi_sigma_for_c: b+ must be odd");
  const Int k = -(1 + b_plus) / 2;
  return {c - 11 * k, -c + 7 * k};
}

ManifoldData random_synthetic_manifold(std::mt19937_64& rng, const SyntheticOptions& opts) {
  ManifoldData m;
  m.form = random_form_between(rng, 1, opts.max_rank, opts.scramble_steps);
  m.b_plus = signature_decomposition(m.form).b_plus;
  const Int c = uniform(rng, opts.c_min, opts.c_max);
  std::tie(m.euler_chi, m.signature_sigma) = chi_sigma_for_c(c, m.b_plus);
  m.consistency = Consistency::synthetic;
  m.sw_simple_type = true;
  m.w2 = Mod2Class::reduce(characteristic_representative(m.form));
  m.name = "synthetic-r" + std::to_string(m.rank()) + "-c" + std::to_string(c);

  const auto count = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(opts.max_classes)));
  std::set<LatticeVector> seen;
  for (int tries = 0; seen.size() < count && tries < 1000; ++tries) {
    LatticeVector k = random_characteristic(rng, m.form, 1);
    if (seen.insert(k).second)
      m.spinc_entries.push_back({k, nonzero_sw(rng, opts.sw_max)});
  }
  validate(m);
  return m;
}

FitInstance make_fit_instance(std::mt19937_64& rng, Int delta, Int m_power, std::size_t min_rank) {
  if (delta < 0 || m_power < 0 || m_power > delta / 2)
    throw Error(ErrorKind::invalid_argument, "make_fit_instance: need 0 <= m <= floor(delta/2)");
  FitInstance inst;
  inst.delta = delta;
  inst.m = m_power;
  ManifoldData& man = inst.manifold;
  man.form = random_form_between(rng, min_rank, 6, 3);
  const auto sig = signature_decomposition(man.form);
  man.b_plus = sig.b_plus;
  man.consistency = Consistency::synthetic;
  man.sw_simple_type = true;
  man.w2 = Mod2Class::reduce(characteristic_representative(man.form));

  const LatticeVector c1 = random_characteristic(rng, man.form, 1);
  const std::size_t n = man.rank();
  LatticeVector lambda = LatticeVector::zero(n);
  while (lambda.is_zero())
    for (std::size_t j = 0; j < n; ++j)
      lambda[j] = uniform(rng, -1, 1);
  LatticeVector w = lambda + man.w2.lift();
  for (std::size_t j = 0; j < n; ++j)
    w[j] -= 2 * uniform(rng, 0, 1);

  // chi + sigma = 4t with 3t == -delta - w^2 (mod 4), i.e. t == delta + w^2.
  const Int w_sq = square(man.form, w);
  const Int a_sq = square(man.form, c1 - lambda);
  const Int need = delta / 2 - m_power;
  Int t = ((delta + w_sq) % 4 + 4) % 4 - 40;
  while (delta + a_sq + 3 * t < 4 * need || delta + a_sq + 3 * t < 0 ||
         4 * t - sig.sigma < static_cast<Int>(n) + 2)
    t += 4;
  if ((delta + a_sq + 3 * t) % 4 != 0)
    throw Error(ErrorKind::inconsistency, "make_fit_instance: level is not integral");
  inst.ell = (delta + a_sq + 3 * t) / 4;
  man.signature_sigma = sig.sigma;
  man.euler_chi = 4 * t - sig.sigma;
  man.spinc_entries.push_back({c1, nonzero_sw(rng, 5)});
  man.name = "fit-r" + std::to_string(n) + "-d" + std::to_string(delta) + "-m" + std::to_string(m_power);
  validate(man);
  inst.w = std::move(w);
  inst.lambda = std::move(lambda);
  return inst;
}

} // namespace dsw
