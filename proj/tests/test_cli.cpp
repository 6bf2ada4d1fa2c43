#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dsw/cli.hpp"
#include "dsw/invariants.hpp"
#include "dsw/manifold_io.hpp"
#include "oracles.hpp"

using namespace dsw;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir(DSW_SOURCE_DIR);
const std::string k3_file = (source_dir / "data" / "corpus" / "k3.manifold").string();

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dsw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  fs::path dir_;
};

const char* const b_plus_one = R"([manifold]
name = b1
chi = 6
sigma = -2
b_plus = 1
sw_simple_type = true
consistency = synthetic

[form]
rank = 3
1 0 0
0 -1 0
0 0 -1

[w2]
1 1 1
)";

std::string no_sw_k3() {
  auto text = read_file(k3_file);
  return text.substr(0, text.find("[spinc]"));
}

} // namespace

TEST_F(CliTest, InfoK3) {
  const auto r = run({"info", k3_file});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("c=2\n"), std::string::npos);
  EXPECT_NE(r.out.find("rank=22\n"), std::string::npos);
  EXPECT_NE(r.out.find("sigma=-16\n"), std::string::npos);
  EXPECT_NE(r.out.find("b_plus=3\n"), std::string::npos);
  EXPECT_NE(r.out.find("spinc_entries=1\n"), std::string::npos);
}

TEST_F(CliTest, InfoEmptyTable) {
  const auto r = run({"info", write("none.manifold", no_sw_k3())});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("spinc_entries=0\n"), std::string::npos);
  EXPECT_EQ(r.out.find("spinc c1="), std::string::npos);
}

TEST_F(CliTest, InfoCorruptedGram) {
  auto text = read_file(k3_file);
  const auto pos = text.find("[form]");
  // First gram row is "0 1 0 ..."; make it "0 2 0 ...".
  const auto row = text.find('\n', text.find("rank", pos)) + 1;
  text[row + 2] = '2';
  const auto r = run({"info", write("bad.manifold", text)});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.manifold:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("symmetric"), std::string::npos) << r.err;
}

TEST_F(CliTest, WittenK3MatchesExpQuadratic) {
  const auto r = run({"witten", k3_file, "-N", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, to_text(exp_quadratic(k3_form(), 8)));
  EXPECT_EQ(r.out, read_file(source_dir / "tests" / "golden" / "k3_witten_N8.txt"));

  FormalSeries reference(22, 8);
  for (const auto& [e, c] : oracle::exp_half_quadratic(k3_form().gram(), 8))
    reference.add_term(e, c);
  EXPECT_EQ(parse_series(r.out), reference);
}

TEST_F(CliTest, WittenNoSWIsZero) {
  const auto r = run({"witten", write("none.manifold", no_sw_k3()), "-N", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "series vars=22 cap=6\n0\n");
}

TEST_F(CliTest, WittenCompareAgainstFittedKM) {
  const auto file = (source_dir / "data" / "corpus" / "synthetic_03.manifold").string();
  const auto km_path = (dir_ / "s3.km").string();
  ASSERT_EQ(run({"km", file, "-N", "8", "-o", km_path}).code, 0);
  const auto r = run({"witten", file, "-N", "8", "--compare", km_path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "congruent mod 8\n");

  // Tamper with the first coefficient.
  auto km = load_km(km_path);
  ASSERT_FALSE(km.terms.empty());
  km.terms[0].a *= 2;
  const auto bad = write("bad.km", serialize(km));
  const auto d = run({"witten", file, "-N", "8", "--compare", bad});
  EXPECT_EQ(d.code, 4);
  EXPECT_EQ(d.out.rfind("first difference at ", 0), 0u) << d.out;
}

TEST_F(CliTest, WittenInclusiveTruncation) {
  const auto strict = run({"witten", k3_file, "-N", "5"});
  const auto inclusive = run({"witten", k3_file, "-N", "4", "--truncation", "inclusive"});
  EXPECT_EQ(strict.out, inclusive.out);
}

TEST_F(CliTest, HypothesesSearchK3) {
  for (const char* variant : {"level0", "level1"}) {
    const auto r = run({"hypotheses", k3_file, "--search", "--variant", variant});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("status=found"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("verdict=pass\n"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.find("status=fail"), std::string::npos) << r.out;
  }
}

TEST_F(CliTest, HypothesesBPlusOneFails) {
  const auto r = run({"hypotheses", write("b1.manifold", b_plus_one), "--lambda", "0,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("hypothesis=b_plus_odd_ge_3 status=fail\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verdict=fail\n"), std::string::npos);
  // Other commands still enforce the standing hypothesis on load.
  EXPECT_EQ(run({"info", write("b1b.manifold", b_plus_one)}).code, 2);
}

TEST_F(CliTest, HypothesesSmallBound) {
  // K^2 = -6 on diag(1,1,1,-1): B-perp is positive definite, so no Lambda of square -6
  // and no hyperbolic pair turn up at any bound.
  const std::string text = R"([manifold]
name = definite-perp
chi = 24
sigma = -16
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
c1 = 1 1 1 3
sw = 1
)";
  const auto file = write("perp.manifold", text);
  auto r = run({"hypotheses", file, "--search", "--bound", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("status=not-found-within-bound"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verdict=unknown-bounded\n"), std::string::npos) << r.out;

  r = run({"hypotheses", file, "--lambda", "0,0,0,0", "--bound", "2"});
  EXPECT_NE(r.out.find("hypothesis=abundant status=unknown-bounded\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, Levels) {
  std::string zero = "0";
  for (int k = 1; k < 22; ++k)
    zero += ",0";
  auto r = run({"levels", k3_file, "--lambda", zero, "--delta", "2", "--w", zero});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("i_lambda=-2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("delta_admissible=true\n"), std::string::npos);
  EXPECT_NE(r.out.find("delta_below_i_lambda=false\n"), std::string::npos);
  EXPECT_NE(r.out.find("contribution ell=2 "), std::string::npos);
  EXPECT_NE(r.out.find("i_range_max=1\n"), std::string::npos);

  r = run({"levels", k3_file, "--lambda", zero, "--delta", "4", "--w", zero});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("delta_admissible=false\n"), std::string::npos);

  r = run({"levels", k3_file, "--lambda", zero, "--delta", "2", "--ell-max", "1", "--w", zero});
  EXPECT_NE(r.out.find("contributions=0\n"), std::string::npos);
}

TEST_F(CliTest, Fit) {
  const auto ok = run({"fit", (source_dir / "data" / "fit" / "fit_d4_m0.obs").string()});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("status=unique"), std::string::npos);
  EXPECT_NE(ok.out.find("validation=ok\n"), std::string::npos);

  const auto bad = run({"fit", (source_dir / "data" / "fit" / "fit_d2_m0_corrupted.obs").string()});
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.out.find("status=inconsistent"), std::string::npos);
  EXPECT_NE(bad.out.find("witness observation="), std::string::npos);
}

TEST_F(CliTest, Selftest) {
  const auto ok = run({"selftest"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("selftest=pass\n"), std::string::npos);
  const auto bad = run({"selftest", "--inject-fault"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("selftest=fail\n"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"witten"}).code, 2);
  EXPECT_EQ(run({"info", (dir_ / "missing.manifold").string()}).code, 2);
  EXPECT_EQ(run({"hypotheses", k3_file}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, Deterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"info", k3_file},
      {"witten", k3_file, "-N", "6"},
      {"hypotheses", k3_file, "--search"},
      {"fit", (source_dir / "data" / "fit" / "fit_d6_m1.obs").string()},
  };
  for (const auto& c : commands)
    EXPECT_EQ(run(c).out, run(c).out);
}

TEST_F(CliTest, SynthWritesLoadableFiles) {
  const auto r = run({"synth", "--seed", "5", "--count", "3", "--outdir", dir_.string()});
  EXPECT_EQ(r.code, 0);
  for (int k = 1; k <= 3; ++k)
    EXPECT_NO_THROW(load_manifold(dir_ / ("synthetic_0" + std::to_string(k) + ".manifold")));
}
