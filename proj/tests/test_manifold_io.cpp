#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "dsw/error.hpp"
#include "dsw/manifold_io.hpp"
#include "dsw/synthetic.hpp"

using namespace dsw;

namespace {

const std::filesystem::path data_dir = std::filesystem::path(DSW_SOURCE_DIR) / "data";

std::string load_error(const std::string& text) {
  try {
    parse_manifold(text, "test.manifold");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::load);
    return e.what();
  }
  ADD_FAILURE() << "no load error";
  return {};
}

const char* const small = R"([manifold]
name = small
chi = 12
sigma = -4
b_plus = 3
sw_simple_type = true
consistency = synthetic

[form]
rank = 4
1 0 0 0
0 1 0 0
0 0 1 0
0 0 0 -1

[w2]
1 1 1 1

[spinc]
c1 = 1 1 1 1
sw = 2
)";

} // namespace

TEST(ManifoldIO, K3File) {
  const auto m = load_manifold(data_dir / "corpus" / "k3.manifold");
  EXPECT_EQ(m.rank(), 22u);
  EXPECT_EQ(m.euler_chi, 24);
  EXPECT_EQ(m.signature_sigma, -16);
  EXPECT_EQ(m.b_plus, 3);
  EXPECT_EQ(m.form, k3_form());
  ASSERT_EQ(m.spinc_entries.size(), 1u);
  EXPECT_EQ(m.spinc_entries[0].sw, 1);
  EXPECT_TRUE(m.spinc_entries[0].c1.is_zero());
}

TEST(ManifoldIO, CorpusRoundTrip) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir / "corpus")) {
    const auto m = load_manifold(entry.path());
    EXPECT_EQ(parse_manifold(serialize(m)), m) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 13u);
}

TEST(ManifoldIO, RandomRoundTrip) {
  std::mt19937_64 rng(50);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_synthetic_manifold(rng);
    const auto text = serialize(m);
    EXPECT_EQ(parse_manifold(text), m);
    EXPECT_EQ(serialize(parse_manifold(text)), text);
  }
}

TEST(ManifoldIO, EmptySpincTable) {
  std::string text = small;
  text = text.substr(0, text.find("[spinc]"));
  const auto m = parse_manifold(text);
  EXPECT_TRUE(m.spinc_entries.empty());
}

TEST(ManifoldIO, NonSymmetricGramReportsLine) {
  std::string text = small;
  text.replace(text.find("0 1 0 0"), 7, "0 1 1 0");
  const auto msg = load_error(text);
  EXPECT_NE(msg.find("test.manifold:"), std::string::npos) << msg;
  // Reported where the mismatch is first visible: row 3 against row 2.
  EXPECT_NE(msg.find(":13:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("not symmetric"), std::string::npos) << msg;
}

TEST(ManifoldIO, LoadErrors) {
  std::string text = small;
  text.replace(text.find("b_plus = 3"), 10, "b_plus = 5");
  EXPECT_FALSE(load_error(text).empty());

  text = small;
  text.replace(text.find("c1 = 1 1 1 1"), 12, "c1 = 0 1 1 1");
  EXPECT_FALSE(load_error(text).empty());

  text = small;
  text.replace(text.find("1 1 1 1\n\n[spinc]"), 7, "1 1 1");
  EXPECT_FALSE(load_error(text).empty());

  text = small;
  text.replace(text.find("rank = 4"), 8, "rank = 5");
  EXPECT_FALSE(load_error(text).empty());

  text = small;
  text.replace(text.find("sw = 2"), 6, "sw = x");
  EXPECT_NE(load_error(text).find(":21:"), std::string::npos);

  EXPECT_FALSE(load_error("[bogus]\n").empty());
  EXPECT_THROW(load_manifold(data_dir / "no_such_file.manifold"), Error);
}

TEST(ManifoldIO, CommentsAndBlankLinesAreIgnored) {
  std::string text = "# header\n\n" + std::string(small);
  text.replace(text.find("[form]"), 6, "[form]  # gram follows");
  EXPECT_EQ(parse_manifold(text), parse_manifold(small));
}

TEST(KMIO, RoundTrip) {
  KMData km{{1, 0, 0, 1}, {{ratio(-3, 4), {1, 1, 1, 1}}, {2, {1, -1, 1, 3}}}};
  EXPECT_EQ(parse_km(serialize(km)), km);
  EXPECT_THROW(parse_km("[km]\nw = 0 0\n[term]\na = 1/0\nK = 0 0\n"), Error);
  EXPECT_THROW(parse_km("[term]\na = 1\nK = 0 0\n"), Error);
}

TEST(FitIO, ParsesObservations) {
  const auto p = load_fit_problem(data_dir / "fit" / "fit_d4_m1.obs");
  EXPECT_EQ(p.delta, 4);
  EXPECT_EQ(p.m, 1);
  ASSERT_FALSE(p.observations.empty());
  EXPECT_EQ(p.observations[0].source, LhsSource::point_evaluate_x2);
  EXPECT_EQ(p.observations[0].lhs.degree(), 2u);

  const auto c = load_fit_problem(data_dir / "fit" / "fit_d2_m0_corrupted.obs");
  EXPECT_EQ(c.observations.back().source, LhsSource::user_table);
}

TEST(VectorCSV, Parses) {
  EXPECT_EQ(parse_vector_csv("1,-2,0"), (LatticeVector{1, -2, 0}));
  EXPECT_EQ(parse_vector_csv(" 3 "), (LatticeVector{3}));
  EXPECT_THROW(parse_vector_csv("1,,2"), Error);
  EXPECT_THROW(parse_vector_csv("a"), Error);
  EXPECT_THROW(parse_vector_csv(""), Error);
}
