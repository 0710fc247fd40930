#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "suppind/builtins.hpp"
#include "suppind/errors.hpp"
#include "suppind/report_io.hpp"

using namespace suppind;

namespace {

const std::filesystem::path kData = std::filesystem::path(SUPPIND_SOURCE_DIR) / "data";

}  // namespace

TEST_CASE("closed set JSON round trip") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RawInterval> iv;
    std::vector<double> atoms;
    for (int k = 0; k < 3; ++k) {
      double a = u(rng);
      double b = u(rng);
      if (a > b) std::swap(a, b);
      iv.push_back(closed_interval(a, b));
      atoms.push_back(u(rng));
    }
    const ClosedSet1D s = closure1d(iv, atoms, {}, Clip{-20, 20});
    const json j = to_json(s);
    CHECK(closed_set_from_json(json::parse(j.dump())) == s);
  }
  const ClosedSet1D half = closure1d(std::vector<RawInterval>{{0, kInf, true, false}}, {}, {}, Clip{0, 8});
  const json j = to_json(half);
  CHECK(j["unbounded"]["right"] == true);
  CHECK(j["clip"]["hi"] == 8.0);
  CHECK(j["intervals"] == json::parse("[[0.0, 8.0]]"));
  CHECK(closed_set_from_json(j) == half);
}

TEST_CASE("region and report JSON") {
  const SupportReport rep = support_report(srs_table());
  const json j = to_json(rep, "srs");
  CHECK(j["kind"] == "support");
  CHECK(j["method"] == "closure-of-atoms");
  CHECK(j["s_xy"]["provenance"] == "analytic");
  CHECK(j["s_xy"]["exact"] == true);
  CHECK(j["s_xy"]["components"].size() == 6);
  CHECK(j["amiable_x"] == "yes");
  CHECK(j["s_x"]["atoms"] == json::parse("[4.0, 5.0, 7.0]"));

  const json v = to_json(make_verdict(necessary_condition(rep.s_xy, rep.s_x, rep.s_y), discrete_factorization_oracle(srs_table())),
                         discrete_factorization_oracle(srs_table()));
  CHECK(v["kind"] == "verdict");
  CHECK(v["screening"] == "DependentBySupport");
  CHECK(v["oracle"] == "Dependent");
  CHECK(v["gap_kind"] == "count");
  CHECK(v["oracle_detail"]["max_residual"].get<double>() == doctest::Approx(1.0 / 9));

  Verdict inf;
  inf.hausdorff = kInf;
  CHECK(to_json(inf)["hausdorff"].is_null());
  CHECK(to_json(inf)["oracle"].is_null());
}

TEST_CASE("PGM orientation") {
  Mask m = Mask::Zero(4, 3);
  m(0, 2) = 1;  // lowest x, highest y
  m(3, 0) = 1;  // highest x, lowest y
  const Region2D r = Region2D::from_mask(m, Grid2D({0, 4, 0, 3}, 4, 3), Provenance::GridEstimated);
  const std::string pgm = to_pgm(r);
  const std::string header = "P5\n4 3\n255\n";
  REQUIRE(pgm.size() == header.size() + 12);
  CHECK(pgm.substr(0, header.size()) == header);
  const auto* px = reinterpret_cast<const unsigned char*>(pgm.data() + header.size());
  CHECK(px[0] == 255);       // first row, first column
  CHECK(px[2 * 4 + 3] == 255);  // last row, last column
  int lit = 0;
  for (int k = 0; k < 12; ++k) lit += px[k] == 255;
  CHECK(lit == 2);
}

TEST_CASE("mask CSV") {
  Mask m = Mask::Zero(3, 3);
  m(1, 1) = 1;
  const Region2D r =
      Region2D::from_mask(m, Grid2D({0, 3, 0, 3}, 3, 3), Provenance::GridEstimated).with_closure_padding();
  std::istringstream in(to_mask_csv(r));
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,padding");
  int core = 0;
  int pad = 0;
  while (std::getline(in, line)) {
    if (line.ends_with(",0")) ++core;
    if (line.ends_with(",1")) ++pad;
    if (line.ends_with(",0")) CHECK(line == "1.5,1.5,0");
  }
  CHECK(core == 1);
  CHECK(pad == 8);
}

TEST_CASE("real parsing") {
  CHECK(parse_real("1/9").value() == doctest::Approx(1.0 / 9).epsilon(1e-16));
  CHECK(parse_real(" 0.25 ").value() == 0.25);
  CHECK(parse_real("-3e2").value() == -300);
  CHECK_FALSE(parse_real("1/0").has_value());
  CHECK_FALSE(parse_real("abc").has_value());
  CHECK_FALSE(parse_real("").has_value());
  CHECK_FALSE(parse_real("1/2/3").has_value());
}

TEST_CASE("CSV tables") {
  const DiscreteJoint iid = read_joint_table(kData / "iid.csv");
  CHECK(iid.atoms().size() == 9);
  const DiscreteJoint srs = read_joint_table(kData / "srs.csv");
  CHECK(srs.atoms().size() == 6);
  CHECK(srs.pmf(4, 5) == doctest::Approx(1.0 / 6));

  const DiscreteJoint c = parse_joint_csv("# comment\n0,0,0.5\n\n1,1,0.5\n");
  CHECK(c.atoms().size() == 2);

  SUBCASE("parse errors carry the position") {
    try {
      parse_joint_csv("x,y,p\n0,0,0.5\n1,oops,0.5\n");
      FAIL("no exception");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 3);
    }
    try {
      parse_joint_csv("0,0,0.5\n1,1\n");
      FAIL("no exception");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  CHECK_THROWS_AS(parse_joint_csv("4,5,0.5\n4,5,0.5\n"), InvalidInput);
  CHECK_THROWS_AS(parse_joint_csv("0,0,0.5\n1,1,0.499\n"), InvalidDistribution);
  const DiscreteJoint r = parse_joint_csv("0,0,0.5\n1,1,0.499\n", {.renormalize = true});
  CHECK(r.renormalized());
  CHECK(r.pmf(0, 0) == doctest::Approx(0.5 / 0.999));
  CHECK_THROWS_AS(parse_joint_csv("0,0,1.5\n1,1,-0.5\n"), InvalidDistribution);
}

TEST_CASE("JSON tables") {
  const DiscreteJoint a = parse_joint_json(R"({"atoms": [{"x": 0, "y": 0, "p": "1/3"}, [1, 1, "2/3"]]})");
  CHECK(a.atoms().size() == 2);
  CHECK(a.pmf(1, 1) == doctest::Approx(2.0 / 3));
  const DiscreteJoint b = parse_joint_json(R"([[0, 0, 0.5], [0, 1, 0.5]])");
  CHECK(b.atoms().size() == 2);
  try {
    parse_joint_json("{\"atoms\": [\n  [0, 0, 1],\n  [1, 1, ]\n]}");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_joint_json(R"({"atoms": [[0, 0]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_joint_json(R"({"atoms": [[0, 0, 0.5], [0, 0, 0.5]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_joint_json(R"({"atoms": [[0, 0, 0.5]]})"), InvalidDistribution);
}

TEST_CASE("samples") {
  const Eigen::MatrixX2d s = parse_samples_csv("x,y\n0.5,1\n-1,2e-1\n");
  REQUIRE(s.rows() == 2);
  CHECK(s(1, 0) == -1);
  CHECK(s(1, 1) == 0.2);
  CHECK_THROWS_AS(parse_samples_csv("x,y\n0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_samples_csv(""), InvalidInput);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "suppind_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text(dir / "a.txt", "hello\n");
  CHECK(read_text(dir / "a.txt") == "hello\n");
  CHECK_THROWS_AS(read_text(dir / "missing.txt"), InvalidInput);
  std::filesystem::remove_all(dir.parent_path());
}
