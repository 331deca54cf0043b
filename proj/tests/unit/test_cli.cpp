#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "halfsph");
  std::ostringstream out, err;
  int code = halfsph::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json strip_timing(json j) {
  std::function<void(json&)> rec = [&](json& x) {
    if (x.is_object()) {
      x.erase("seconds");
      for (auto& [k, v] : x.items()) rec(v);
    } else if (x.is_array()) {
      for (auto& v : x) rec(v);
    }
  };
  rec(j);
  return j;
}

std::string diagram(const std::string& name) { return std::string(HALFSPH_DATA_DIR) + "/diagrams/" + name; }

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~EnvGuard() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, CheckSharpStarTriple) {
  auto r = run({"check", "--preset", "Csharp", "--N", "3", "--target", "a b* c = c b* a", "--verify"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.j();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["status"], "proved");
  EXPECT_EQ(j["verb"], "check");
  std::size_t longest = 0;
  for (const auto& inst : j["payload"]["instances"]) {
    EXPECT_EQ(inst["verdict"], "proved");
    EXPECT_TRUE(inst["replay"]["ok"].get<bool>());
    longest = std::max(longest, inst["steps"].get<std::size_t>());
  }
  EXPECT_EQ(longest, 3u);
}

TEST(Cli, RefutePreset) {
  auto r = run({"refute", "--preset", "Ccirc", "--N", "2", "--target", "z1 z2* = z2* z1", "--sampler",
                "preset-prop25"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.j();
  EXPECT_EQ(j["status"], "certified");
  EXPECT_NEAR(j["payload"]["counterexample"]["target_residual"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(j["payload"]["counterexample"]["reverified"]["ok"].get<bool>());
}

TEST(Cli, QisomClosure) {
  auto r = run({"qisom", "--sphere", "Cstar", "--mode", "closure", "--verify"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.j();
  EXPECT_EQ(j["status"], "proved");
  for (const auto& rp : j["payload"]["replay"]) EXPECT_TRUE(rp["ok"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"check", "--preset", "Cplus", "--N", "2", "--target", "z1 z2 = z2 z1"}).code, 3);
  auto refuted = run({"check", "--preset", "Cplus", "--N", "2", "--target", "z1 z2 = z2 z1", "--sampler", "auto"});
  EXPECT_EQ(refuted.code, 2);
  EXPECT_EQ(refuted.j()["status"], "refuted");
  EXPECT_TRUE(refuted.j()["payload"].contains("counterexample"));
  EXPECT_EQ(run({"refute", "--preset", "C", "--N", "2", "--target", "z1 z2 = z2 z1"}).code, 3);
  auto bad = run({"check", "--preset", "Nope", "--target", "z1 = z1*"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.j()["status"], "error");
  EXPECT_TRUE(bad.j().contains("error"));
}

TEST(Cli, UnknownFlagsAreRejected) {
  auto r = run({"check", "--preset", "C", "--target", "z1 = z1", "--frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.j()["status"], "error");
  EXPECT_EQ(run({"nosuchverb"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SameCommandSameBytes) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sample", "--model", "udiag", "--N", "2", "--seed", "5", "--check", "Csharp"},
           {"gram", "--family", "2", "--N", "2", "--seed", "3"},
           {"diagram", diagram("six_sphere.diag")},
           {"refute", "--preset", "Cstarstar", "--N", "2", "--target", "z1 z1 z2 = z2 z1 z1", "--sampler", "udiag"}}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(strip_timing(a.j()).dump(), strip_timing(b.j()).dump()) << args[0];
  }
}

TEST(Cli, ConfigurationPrecedence) {
  EXPECT_EQ(run({"sample", "--model", "S_C"}).j()["seed"], 1);
  {
    EnvGuard g("HALFSPH_SEED", "17");
    EXPECT_EQ(run({"sample", "--model", "S_C"}).j()["seed"], 17);
    EXPECT_EQ(run({"sample", "--model", "S_C", "--seed", "4"}).j()["seed"], 4);
  }
  {
    EnvGuard g("HALFSPH_TOL", "1e-6");
    EXPECT_DOUBLE_EQ(run({"sample", "--model", "S_C"}).j()["tolerance"].get<double>(), 1e-6);
    EXPECT_DOUBLE_EQ(run({"sample", "--model", "S_C", "--tol", "1e-3"}).j()["tolerance"].get<double>(), 1e-3);
  }
  {
    EnvGuard g("HALFSPH_SEED", "banana");
    EXPECT_EQ(run({"sample", "--model", "S_C"}).code, 1);
  }
}

TEST(Cli, MarkdownDigest) {
  auto r = run({"diagram", diagram("six_sphere.diag"), "--md"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# Diagram six_sphere"), std::string::npos);
  EXPECT_NE(r.out.find("| C | Cstarstar | Certified | pq-preset |"), std::string::npos);
  auto g = run({"gram", "--family", "1", "--N", "3", "--md"});
  EXPECT_NE(g.out.find("rank 6 of 6"), std::string::npos);
}

TEST(Cli, DiagramStatusesAndReportFiles) {
  auto qg = run({"diagram", diagram("quantum_groups.diag")});
  EXPECT_EQ(qg.code, 0);
  EXPECT_EQ(qg.j()["status"], "indirect");
  const auto dir = std::filesystem::temp_directory_path() / "halfsph_cli_report";
  std::filesystem::remove_all(dir);
  auto rep = run({"report", diagram("six_sphere.diag"), "--out", dir.string(), "--verify"});
  EXPECT_EQ(rep.code, 0);
  EXPECT_EQ(rep.j()["payload"]["replay"]["failures"], 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "six_sphere.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "six_sphere.md"));
  std::ifstream f(dir / "six_sphere.json");
  EXPECT_EQ(json::parse(f)["status"], "proved");
}

TEST(Cli, PresentationFileInput) {
  const auto path = std::filesystem::temp_directory_path() / "halfsph_cli_sharp.pres";
  std::ofstream(path) << "presentation S {\n  generators z 1..3;\n  unit sphere;\n"
                         "  relation forall a,b in z: a b* = b a*;\n  relation forall a,b in z: a* b = b* a;\n}\n";
  auto r = run({"check", "--file", path.string(), "--target", "z1 z2* z3 = z3 z2* z1"});
  EXPECT_EQ(r.code, 0) << r.out;
  std::ofstream(path) << "presentation S {\n  generators z 1..3;\n  relation z1 z4 = 0;\n}\n";
  auto bad = run({"check", "--file", path.string(), "--target", "z1 = z1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.j()["error"].get<std::string>().find(":3:"), std::string::npos);
}

TEST(Cli, ProjectiveAndCoaction) {
  EXPECT_EQ(run({"projective", "--preset", "Cstar", "--N", "2", "--item", "commutation", "--verify"}).code, 0);
  EXPECT_EQ(run({"projective", "--preset", "Csharp", "--N", "2", "--item", "symmetric"}).code, 0);
  EXPECT_EQ(run({"projective", "--preset", "Cstar", "--N", "2", "--item", "symmetric"}).code, 3);
  auto c = run({"qisom", "--sphere", "Ccirc", "--mode", "coaction", "--verify"});
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_EQ(c.j()["payload"]["replay"]["failures"], 0);
}
