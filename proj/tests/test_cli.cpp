#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "suppind/report_io.hpp"

namespace fs = std::filesystem;
using suppind::cli::ExitCode;

namespace {

const fs::path kData = fs::path(SUPPIND_SOURCE_DIR) / "data";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "suppind");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = suppind::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "suppind_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

nlohmann::json load(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("list and unknown example") {
  const Run l = run({"list"});
  CHECK(l.code == ExitCode::kOk);
  for (const char* name : {"darts", "colosseum", "example7", "example8-iid", "example8-srs", "example9",
                           "beta-bernoulli", "cantor"}) {
    CHECK(l.out.find(name) != std::string::npos);
  }
  const Run u = run({"example", "no-such-example", "--out", scratch("unknown").string()});
  CHECK(u.code == ExitCode::kInputError);
  CHECK(u.err.find("darts") != std::string::npos);
  CHECK(run({}).code == ExitCode::kInputError);
  CHECK(run({"support", "--bogus"}).code == ExitCode::kInputError);
}

TEST_CASE("support commands") {
  const fs::path d = scratch("support-darts");
  REQUIRE(run({"support", "--builtin", "darts-uniform", "--grid", "512", "--out", d.string()}).code == 0);
  const auto j = load(d / "support.json");
  CHECK(j["kind"] == "support");
  CHECK(j["s_x"]["intervals"] == nlohmann::json::parse("[[-1.0, 1.0]]"));
  CHECK(j["s_y"]["intervals"] == nlohmann::json::parse("[[-1.0, 1.0]]"));
  CHECK(j["s_xy"]["area"].get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-3));
  CHECK(fs::exists(d / "mask.pgm"));
  CHECK(fs::exists(d / "mask.csv"));

  const fs::path t = scratch("support-srs");
  REQUIRE(run({"support", "--table", (kData / "srs.csv").string(), "--out", t.string()}).code == 0);
  const auto s = load(t / "support.json");
  CHECK(s["s_xy"]["components"].size() == 6);
  CHECK(s["s_x"]["atoms"] == nlohmann::json::parse("[4.0, 5.0, 7.0]"));
  CHECK(s["s_y"]["atoms"] == nlohmann::json::parse("[4.0, 5.0, 7.0]"));

  const fs::path m = scratch("support-samples");
  suppind::write_text(m / "xy.csv", "x,y\n0,0\n1,1\n0.5,0.5\n");
  REQUIRE(run({"support", "--samples", (m / "xy.csv").string(), "--grid", "16", "--min-count", "1", "--out",
               m.string()})
              .code == 0);
  const auto e = load(m / "support.json");
  CHECK(e["method"] == "empirical-grid");
  CHECK(e["s_xy"]["cells"] == 3);

  const fs::path c = scratch("support-cantor");
  REQUIRE(run({"support", "--builtin", "cantor", "--out", c.string()}).code == 0);
  CHECK(load(c / "support.json")["kind"] == "support1d");
}

TEST_CASE("check commands") {
  const fs::path a = scratch("check-iid");
  const Run iid = run({"check", "--table", (kData / "iid.csv").string(), "--oracle", "exact", "--out", a.string()});
  REQUIRE(iid.code == 0);
  const auto vi = load(a / "verdict.json");
  CHECK(vi["screening"] == "Inconclusive");
  CHECK(vi["oracle"] == "Independent");

  const fs::path b = scratch("check-ex7");
  REQUIRE(run({"check", "--builtin", "example7", "--out", b.string()}).code == 0);
  const auto v7 = load(b / "verdict.json");
  CHECK(v7["screening"] == "Inconclusive");
  CHECK(v7["oracle"] == "Dependent");

  const fs::path c = scratch("check-darts");
  REQUIRE(run({"check", "--builtin", "darts-uniform", "--out", c.string()}).code == 0);
  const auto vd = load(c / "verdict.json");
  CHECK(vd["screening"] == "DependentBySupport");
  CHECK(std::abs(vd["gap"].get<double>() - 0.858) < 0.01);

  const fs::path d = scratch("check-srs-cdf");
  REQUIRE(run({"check", "--table", (kData / "srs.csv").string(), "--oracle", "cdf", "--out", d.string()}).code == 0);
  CHECK(load(d / "verdict.json")["oracle"] == "Dependent");

  // Oracles that do not apply are input errors.
  CHECK(run({"check", "--table", (kData / "srs.csv").string(), "--oracle", "probe", "--out", d.string()}).code ==
        ExitCode::kInputError);
  CHECK(run({"check", "--builtin", "normal", "--out", d.string()}).code == ExitCode::kInputError);
}

TEST_CASE("exit codes") {
  const fs::path d = scratch("exit");
  SUBCASE("input errors") {
    CHECK(run({"check", "--out", d.string()}).code == ExitCode::kInputError);
    CHECK(run({"check", "--builtin", "darts", "--table", "x.csv", "--out", d.string()}).code ==
          ExitCode::kInputError);
    CHECK(run({"check", "--builtin", "darts", "--grid", "8", "--out", d.string()}).code == ExitCode::kInputError);
    CHECK(run({"check", "--builtin", "darts", "--tol-area", "-1", "--out", d.string()}).code ==
          ExitCode::kInputError);
    CHECK(run({"check", "--builtin", "darts", "--oracle", "magic", "--out", d.string()}).code ==
          ExitCode::kInputError);
    CHECK(run({"check", "--builtin", "nonsense", "--out", d.string()}).code == ExitCode::kInputError);
    CHECK(run({"check", "--builtin", "darts", "--clip", "3", "--out", d.string()}).code == ExitCode::kInputError);
    CHECK(run({"support", "--table", (d / "missing.csv").string(), "--out", d.string()}).code ==
          ExitCode::kInputError);

    suppind::write_text(d / "bad.csv", "x,y,p\n4,5,0.5\n4,x,0.5\n");
    const Run bad = run({"support", "--table", (d / "bad.csv").string(), "--out", d.string()});
    CHECK(bad.code == ExitCode::kInputError);
    CHECK(bad.err.find("line 3") != std::string::npos);

    suppind::write_text(d / "dup.csv", "4,5,0.5\n4,5,0.5\n");
    CHECK(run({"support", "--table", (d / "dup.csv").string(), "--out", d.string()}).code == ExitCode::kInputError);
  }
  SUBCASE("invalid distribution and renormalisation") {
    suppind::write_text(d / "short.csv", "x,y,p\n0,0,0.5\n1,1,0.499\n");
    CHECK(run({"support", "--table", (d / "short.csv").string(), "--out", d.string()}).code ==
          ExitCode::kInvalidDistribution);
    const Run ok = run({"check", "--table", (d / "short.csv").string(), "--renormalize", "--out", d.string()});
    CHECK(ok.code == ExitCode::kOk);
    CHECK(ok.out.find("renormalized") != std::string::npos);
    const auto v = load(d / "verdict.json");
    bool noted = false;
    for (const auto& n : v["notes"]) noted |= n.get<std::string>().find("renormalized") != std::string::npos;
    CHECK(noted);
  }
  SUBCASE("numeric failure") {
    const Run r = run({"check", "--builtin", "beta-bernoulli(1e4,1e4)", "--out", d.string()});
    CHECK(r.code == ExitCode::kNumericFailure);
  }
}

TEST_CASE("examples are byte-identical across runs") {
  const fs::path a = scratch("det-a");
  const fs::path b = scratch("det-b");
  for (const auto& e : suppind::cli::example_registry()) {
    CAPTURE(e.name);
    REQUIRE(run({"example", e.name, "--out", a.string()}).code == 0);
    REQUIRE(run({"example", e.name, "--out", b.string()}).code == 0);
    int files = 0;
    for (const auto& f : fs::recursive_directory_iterator(a / e.name)) {
      if (!f.is_regular_file()) continue;
      const fs::path rel = fs::relative(f.path(), a);
      CAPTURE(rel.string());
      REQUIRE(fs::exists(b / rel));
      CHECK(slurp(f.path()) == slurp(b / rel));
      ++files;
    }
    CHECK(files >= 2);
    CHECK(fs::exists(a / e.name / "summary.txt"));
  }
}

TEST_CASE("example seed changes Monte Carlo output") {
  const fs::path a = scratch("seed-a");
  REQUIRE(run({"example", "example9", "--seed", "1", "--out", a.string()}).code == 0);
  const fs::path b = scratch("seed-b");
  REQUIRE(run({"example", "example9", "--seed", "2", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "example9" / "summary.txt") != slurp(b / "example9" / "summary.txt"));
}

TEST_CASE("output directory from the environment") {
  const fs::path d = scratch("env");
  ::setenv("SUPPIND_OUT", d.string().c_str(), 1);
  const Run r = run({"support", "--table", (kData / "iid.csv").string()});
  ::unsetenv("SUPPIND_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(d / "support.json"));
}
