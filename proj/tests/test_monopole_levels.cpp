#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dsw/error.hpp"
#include "dsw/monopole_levels.hpp"
#include "dsw/synthetic.hpp"
#include "oracles.hpp"

using namespace dsw;

namespace {

ManifoldData k3() {
  ManifoldData m;
  m.name = "K3";
  m.euler_chi = 24;
  m.signature_sigma = -16;
  m.b_plus = 3;
  m.form = k3_form();
  m.w2 = Mod2Class::zero(22);
  m.sw_simple_type = true;
  m.spinc_entries.push_back({LatticeVector::zero(22), 1});
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::invalid_argument;
}

} // namespace

TEST(Uhlenbeck, Examples) {
  const SpinuData base{-8, Mod2Class({1, 0}), {1, 0}};
  EXPECT_EQ(uhlenbeck_level(base, 1).spinu_at_level.p1, -4);
  EXPECT_EQ(uhlenbeck_level(base, 0).spinu_at_level, base);
  EXPECT_EQ(uhlenbeck_level(base, 3).spinu_at_level.p1, 4);
  EXPECT_EQ(uhlenbeck_level(base, 3).spinu_at_level.c1, base.c1);
  EXPECT_EQ(uhlenbeck_level(base, 3).spinu_at_level.w2_class, base.w2_class);
  EXPECT_EQ(kind_of([&] { uhlenbeck_level(base, -1); }), ErrorKind::invalid_argument);
  EXPECT_EQ(base.kappa(), 2);
}

TEST(Uhlenbeck, Composes) {
  std::mt19937_64 rng(30);
  std::uniform_int_distribution<Int> p(-40, 40), l(0, 10);
  for (int t = 0; t < 100; ++t) {
    const SpinuData base{p(rng), Mod2Class({1, 1}), {1, 1}};
    const Int a = l(rng), b = l(rng);
    EXPECT_EQ(uhlenbeck_level(uhlenbeck_level(base, a).spinu_at_level, b).spinu_at_level,
              uhlenbeck_level(base, a + b).spinu_at_level);
  }
}

TEST(ILambda, Examples) {
  EXPECT_EQ(i_lambda(-6, 24, -16), -8);
  EXPECT_EQ(i_lambda(0, 0, 0), 0);
  EXPECT_EQ(i_lambda(4 - 8, 24, -16), -6);
  EXPECT_EQ(i_lambda(0, 1, 0), ratio(-1, 4));
}

TEST(DeltaAdmissible, Examples) {
  for (Int d = 0; d <= 12; ++d) {
    EXPECT_EQ(delta_admissible(d, -6, 24, -16), d % 4 == 0) << d;
    EXPECT_EQ(delta_admissible(d, 0, 24, -16), d % 4 == 2) << d;
  }
  EXPECT_EQ(kind_of([] { delta_admissible(0, 0, 2, 0); }), ErrorKind::refusal);
}

TEST(LevelIndex, Examples) {
  const auto h = hyperbolic_plane();
  const LatticeVector lambda{1, -3};
  EXPECT_EQ(level_index(2, lambda, lambda, h, 24, -16), 2);
  EXPECT_EQ(level_index(0, lambda, lambda, h, 0, 0), 0);

  // (c1 - Lambda)^2 = -1 on diag(1,-1).
  const auto d = diagonal_form({1, -1});
  EXPECT_EQ(level_value(0, {0, 1}, {0, 0}, d, 24, -16), ratio(5, 4));
  try {
    level_index(0, {0, 1}, {0, 0}, d, 24, -16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::refusal);
    EXPECT_NE(std::string(e.what()).find("non-integral level"), std::string::npos);
  }
  try {
    level_index(0, {0, 0}, {0, 4}, d, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("negative level"), std::string::npos);
  }
}

TEST(DeltaWindow, Examples) {
  EXPECT_TRUE(check_delta_window(0, 1));
  EXPECT_FALSE(check_delta_window(3, 3));
  const Rational i = i_lambda(-4, 24, -16);
  for (Int d = 0; d <= 20; ++d)
    EXPECT_FALSE(check_delta_window(d, i));
}

TEST(LevelIndex, IntegralOnAdmissibleTuplesBruteForce) {
  // H and diag(1,-1), coordinates within 3, delta <= 12, every chi + sigma = 0 mod 4 in [-8, 8].
  for (const auto& g : {oracle::Matrix{{0, 1}, {1, 0}}, oracle::Matrix{{1, 0}, {0, -1}}}) {
    const IntersectionForm form(g);
    std::size_t checked = 0;
    oracle::for_each_in_box(2, 3, [&](const oracle::Vec& c1) {
      if (!oracle::characteristic(g, c1))
        return;
      oracle::for_each_in_box(2, 3, [&](const oracle::Vec& w) {
        oracle::for_each_in_box(2, 3, [&](const oracle::Vec& lambda) {
          // w - Lambda == w2 == c1 (mod 2).
          for (std::size_t j = 0; j < 2; ++j)
            if (((w[j] - lambda[j] - c1[j]) % 2 + 2) % 2 != 0)
              return;
          for (Int s = -8; s <= 8; s += 4)
            for (Int delta = 0; delta <= 12; ++delta) {
              if (!delta_admissible(delta, oracle::bilinear(g, w, w), s, 0))
                continue;
              oracle::Vec a{c1[0] - lambda[0], c1[1] - lambda[1]};
              const Int num = 4 * delta + 4 * oracle::bilinear(g, a, a) + 3 * s;
              EXPECT_EQ(num % 16, 0);
              EXPECT_TRUE(is_integer(level_value(delta, LatticeVector(c1), LatticeVector(lambda), form, s, 0)));
              ++checked;
            }
        });
      });
    });
    EXPECT_GT(checked, 1000u);
  }
}

TEST(LevelIndex, StepsByQuarterPerDelta) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto form = random_form(rng, 5);
    const auto c1 = random_characteristic(rng, form, 1);
    const auto lambda = random_characteristic(rng, form, 1);
    for (Int d = 0; d < 12; ++d) {
      EXPECT_EQ(level_value(d + 1, c1, lambda, form, 8, 0) - level_value(d, c1, lambda, form, 8, 0), ratio(1, 4));
      EXPECT_EQ(level_value(d + 4, c1, lambda, form, 8, 0) - level_value(d, c1, lambda, form, 8, 0), 1);
    }
  }
}

TEST(Enumerate, Examples) {
  auto none = k3();
  none.spinc_entries.clear();
  const auto zero = LatticeVector::zero(22);
  EXPECT_TRUE(enumerate_contributions(none, zero, zero, 2, 0, 3).contributions.empty());

  const auto list = enumerate_contributions(k3(), zero, zero, 2, 0, 3);
  ASSERT_EQ(list.contributions.size(), 1u);
  EXPECT_EQ(list.contributions[0].ell, 2);
  EXPECT_EQ(list.contributions[0].i_range_max, 1);
  EXPECT_EQ(list.contributions[0].sign, 1);

  // delta = 22 puts the K3 entry at level 7.
  EXPECT_TRUE(enumerate_contributions(k3(), zero, zero, 22, 0, 3).contributions.empty());
  EXPECT_EQ(enumerate_contributions(k3(), zero, zero, 22, 0, 7).contributions.at(0).ell, 7);

  EXPECT_THROW(enumerate_contributions(k3(), zero, zero, 2, 2, 3), Error);
}

TEST(Enumerate, NonIntegralLevelsAreNotes) {
  ManifoldData m;
  m.form = diagonal_form({1, 1, 1, -1});
  m.b_plus = 3;
  std::tie(m.euler_chi, m.signature_sigma) = chi_sigma_for_c(2, 3);
  m.consistency = Consistency::synthetic;
  m.w2 = Mod2Class({1, 1, 1, 1});
  m.spinc_entries = {{{1, 1, 1, 1}, 1}, {{1, 1, 1, 3}, 2}, {{3, 1, 1, 1}, -1}};
  ASSERT_TRUE(validation_errors(m).empty());
  // Lambda = (0,0,0,1): (c1 - Lambda)^2 = 3 for the first, -1 for the second, 11 for the third.
  const auto list = enumerate_contributions(m, {1, 1, 1, 0}, {0, 0, 0, 1}, 2, 0, 10);
  EXPECT_EQ(list.notes.size() + list.contributions.size(), 3u);
  for (const auto& n : list.notes)
    EXPECT_NE(n.find("level"), std::string::npos);
}

TEST(Enumerate, SortedAndDeterministic) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto man = random_synthetic_manifold(rng);
    const auto lambda = LatticeVector::zero(man.rank());
    const auto w = man.w2.lift();
    const Int delta = (((-square(man.form, w) - 3 * (man.euler_chi + man.signature_sigma) / 4) % 4) + 4) % 4 + 4;
    const auto a = enumerate_contributions(man, w, lambda, delta, 1, 20);
    const auto b = enumerate_contributions(man, w, lambda, delta, 1, 20);
    ASSERT_EQ(a.contributions.size(), b.contributions.size());
    for (std::size_t k = 0; k < a.contributions.size(); ++k) {
      EXPECT_EQ(a.contributions[k].entry, b.contributions[k].entry);
      if (k > 0) {
        const auto& p = a.contributions[k - 1];
        const auto& q = a.contributions[k];
        EXPECT_TRUE(p.ell < q.ell || (p.ell == q.ell && p.entry.c1 < q.entry.c1));
      }
      EXPECT_EQ(a.contributions[k].i_range_max, std::min<Int>(a.contributions[k].ell, delta / 2 - 1));
    }
    // Admissible delta with w - Lambda == w2 gives integral levels everywhere.
    EXPECT_TRUE(a.notes.empty() || std::all_of(a.notes.begin(), a.notes.end(), [](const std::string& n) {
                  return n.find("negative") != std::string::npos;
                }));
  }
}
