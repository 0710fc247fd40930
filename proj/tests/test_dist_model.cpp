#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "suppind/dist_model.hpp"
#include "suppind/errors.hpp"

using namespace suppind;

namespace {

DiscreteJoint table(bool srs) {
  std::vector<Atom2> atoms;
  for (double x : {4.0, 5.0, 7.0}) {
    for (double y : {4.0, 5.0, 7.0}) {
      if (srs && x == y) continue;
      atoms.push_back({x, y, srs ? 1.0 / 6 : 1.0 / 9});
    }
  }
  return DiscreteJoint::make(atoms);
}

double unit_cdf(double t) { return std::clamp(t, 0.0, 1.0); }

// Plain textbook densities, independent of the library's evaluators.
double phi(double x) { return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi); }
double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("marginals of the two tables") {
  for (bool srs : {false, true}) {
    const auto [px, py] = marginals(table(srs));
    for (const auto* m : {&px, &py}) {
      REQUIRE(m->atoms().size() == 3);
      CHECK(m->values() == std::vector<double>{4, 5, 7});
      for (const auto& a : m->atoms()) CHECK(a.p == doctest::Approx(1.0 / 3).epsilon(1e-14));
    }
  }
  const auto [qx, qy] = marginals(DiscreteJoint::make({{0, 0, 1}}));
  CHECK(qx.atoms().size() == 1);
  CHECK(qx.pmf(0) == 1.0);
  CHECK(qy.pmf(0) == 1.0);
}

TEST_CASE("marginals preserve mass") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Atom2> atoms;
    double total = 0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (u(rng) < 0.3) continue;
        atoms.push_back({double(i), double(j), u(rng)});
        total += atoms.back().p;
      }
    }
    if (atoms.empty()) continue;
    for (auto& a : atoms) a.p /= total;
    const auto j = DiscreteJoint::make(atoms, {}, 1e-12);
    const auto [px, py] = marginals(j);
    CHECK(std::abs(px.mass() - 1.0) <= 1e-12);
    CHECK(std::abs(py.mass() - 1.0) <= 1e-12);
    for (const auto& a : px.atoms()) {
      double row = 0;
      for (const auto& b : atoms) {
        if (b.x == a.x) row += b.p;
      }
      CHECK(a.p == doctest::Approx(row).epsilon(1e-13));
    }
  }
}

TEST_CASE("PMF validation") {
  CHECK_THROWS_AS(DiscreteJoint::make({{0, 0, 0.5}, {0, 0, 0.5}}), InvalidInput);
  CHECK_THROWS_AS(DiscreteJoint::make({{0, 0, 0.5}, {1, 0, 0.4}}), InvalidDistribution);
  CHECK_THROWS_AS(DiscreteJoint::make({{0, 0, 1.5}, {1, 0, -0.5}}), InvalidDistribution);
  CHECK_THROWS_AS(MarginalPMF::make({{0, 0.5}, {0, 0.5}}), InvalidInput);
  const auto r = DiscreteJoint::make({{0, 0, 0.5}, {1, 0, 0.499}}, {}, 1e-12, true);
  CHECK(r.renormalized());
  CHECK(r.pmf(0, 0) + r.pmf(1, 0) == doctest::Approx(1.0));
  // Zero-mass rows are dropped, so they never enter the atom set.
  CHECK(DiscreteJoint::make({{0, 0, 1}, {1, 1, 0}}).atoms().size() == 1);
}

TEST_CASE("countable PMFs") {
  const MarginalPMF p = poisson_pmf(3.0);
  CHECK(p.mass() + p.truncation_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.pmf(0) == doctest::Approx(std::exp(-3.0)));
  const MarginalPMF b = binomial_pmf(10, 0.3);
  CHECK(b.atoms().size() == 11);
  CHECK(b.pmf(3) == doctest::Approx(120 * std::pow(0.3, 3) * std::pow(0.7, 7)));
  CHECK_THROWS_AS(poisson_pmf(-1), InvalidInput);
}

TEST_CASE("canonical 1D density examples") {
  CHECK(canonical_pdf_1d(normal_cdf, 0.0) == doctest::Approx(1 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-9));
  const Univariate e = exponential_distribution(1.0);
  CHECK(canonical_pdf_1d(e.cdf, 0.0) == 0.0);
  CHECK(canonical_pdf_1d(e.cdf, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(canonical_pdf_1d(unit_cdf, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(canonical_pdf_1d(unit_cdf, 0.0) == 0.0);
  CHECK(canonical_pdf_1d(unit_cdf, 1.0) == 0.0);
  CHECK(canonical_pdf_1d(unit_cdf, 2.0) == 0.0);
  CHECK_THROWS_AS(canonical_pdf_1d([](double x) { return -x; }, 0.0), InvalidDistribution);
}

TEST_CASE("canonical density of the normal CDF on [-4, 4]") {
  double worst = 0;
  for (int k = 0; k <= 100; ++k) {
    const double x = -4 + 0.08 * k;
    worst = std::max(worst, std::abs(canonical_pdf_1d(Phi, x, {.step = 1e-4}) - phi(x)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("canonical 2D density examples") {
  auto uu = [](double x, double y) { return unit_cdf(x) * unit_cdf(y); };
  CHECK(canonical_pdf_2d(uu, 0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(canonical_pdf_2d(uu, 0.0, 0.5) == 0.0);
  auto nn = [](double x, double y) { return Phi(x) * Phi(y); };
  CHECK(canonical_pdf_2d(nn, 0.0, 0.0) == doctest::Approx(1 / (2 * std::numbers::pi)).epsilon(1e-6));
}

TEST_CASE("2D canonical density of a product is the product of 1D densities") {
  const Univariate ex = exponential_distribution(1.5);
  auto fx = [](double x) { return Phi(x); };
  auto fy = ex.cdf;
  auto F = [&](double x, double y) { return fx(x) * fy(y); };
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(-3, 3);
  std::uniform_real_distribution<double> uy(0.05, 3);
  for (int k = 0; k < 200; ++k) {
    const double x = ux(rng);
    const double y = uy(rng);
    const double two = canonical_pdf_2d(F, x, y);
    const double one = canonical_pdf_1d(fx, x) * canonical_pdf_1d(fy, y);
    CHECK(std::abs(two - one) <= 1e-4);
  }
}

TEST_CASE("mixture CDF") {
  LebesgueMixture d;
  d.discrete = [](double x) { return x >= 0 ? 1.0 : 0.0; };
  CHECK(mixture_cdf(d, 1.0) == 1.0);

  LebesgueMixture s;
  s.weights = {0, 0, 1};
  s.singular = CantorCdf(10);
  CHECK(mixture_cdf(s, 1.0) == 1.0);

  LebesgueMixture h;
  h.weights = {0.5, 0.5, 0};
  h.discrete = d.discrete;
  h.continuous = unit_cdf;
  CHECK(mixture_cdf(h, 0.5) == doctest::Approx(0.75));

  LebesgueMixture missing;
  missing.weights = {0, 1, 0};
  CHECK_THROWS_AS(mixture_cdf(missing, 0.0), InvalidInput);
  LebesgueMixture bad;
  bad.weights = {0.5, 0.6, 0};
  bad.discrete = d.discrete;
  bad.continuous = unit_cdf;
  CHECK_THROWS_AS(mixture_cdf(bad, 0.0), InvalidDistribution);
}

TEST_CASE("Cantor CDF examples") {
  const CantorCdf F(10);
  CHECK(F.plateaus().size() == 1023);
  CHECK(F(0.0) == 0.0);
  CHECK(F(1.0) == 1.0);
  CHECK(F(0.4) == 0.5);
  CHECK(F(0.6) == 0.5);
  CHECK(F(0.12) == 0.25);  // inside (1/9, 2/9)
  CHECK(F(-1.0) == 0.0);
  CHECK(F(2.0) == 1.0);
  for (int levels : {1, 3, 7, 20}) {
    CHECK(CantorCdf(levels).plateaus().size() == (std::size_t{1} << levels) - 1);
    CHECK(CantorCdf(levels)(0.5) == 0.5);
  }
  CHECK_THROWS_AS(CantorCdf(0), InvalidInput);
  CHECK_THROWS_AS(CantorCdf(31), InvalidInput);
}

TEST_CASE("Cantor CDF properties") {
  const CantorCdf F(10);
  double prev = F(0.0);
  for (int k = 1; k <= 10000; ++k) {
    const double v = F(k / 10000.0);
    CHECK(v >= prev);
    prev = v;
  }
  // Self-similarity of the limit holds exactly for the level construction
  // on the left third: F_L(x/3) = F_{L-1}(x)/2.
  const CantorCdf G(9);
  for (int k = 0; k <= 300; ++k) {
    const double x = k / 300.0;
    CHECK(F(x / 3) == doctest::Approx(G(x) / 2).epsilon(1e-12));
  }
  std::size_t flat = 0;
  for (const auto& p : F.plateaus()) {
    const double mid = 0.5 * (p.span.lo + p.span.hi);
    const double step = p.span.length() / 4;
    if (canonical_pdf_1d(F, mid, {.step = step}) == 0.0) ++flat;
    CHECK(F(mid) == p.value);
  }
  CHECK(flat == F.plateaus().size());
  // Polyline endpoints and continuity at breakpoints.
  const auto poly = F.polyline();
  CHECK(poly.front() == Point2{0, 0});
  CHECK(poly.back().x == doctest::Approx(1.0));
  CHECK(poly.back().y == doctest::Approx(1.0));
  for (const auto& pt : poly) CHECK(F(pt.x) == doctest::Approx(pt.y).epsilon(1e-12));
}

TEST_CASE("Beta-Bernoulli level masses") {
  struct Case {
    double a, b;
  };
  for (Case c : {Case{1, 1}, Case{2, 1}, Case{0.5, 0.5}, Case{3, 7}, Case{0.7, 2.5}}) {
    const MixedJoint j = beta_bernoulli_joint(c.a, c.b);
    // P(Y=1) = B(a+1, b) / B(a, b) = a / (a+b).
    const double oracle = std::beta(c.a + 1, c.b) / std::beta(c.a, c.b);
    CHECK(std::abs(j.weights()[1] - oracle) <= 1e-9);
    CHECK(std::abs(j.weights()[1] - c.a / (c.a + c.b)) <= 1e-9);
    CHECK(std::abs(j.total_mass() - 1.0) <= 1e-9);
    CHECK(j.discrete_cdf(0.5) == doctest::Approx(c.b / (c.a + c.b)));
  }
  CHECK(beta_bernoulli_joint(1, 1).weights()[1] == doctest::Approx(0.5));
  CHECK(beta_bernoulli_joint(2, 1).weights()[1] == doctest::Approx(2.0 / 3));
  CHECK(beta_bernoulli_joint(1, 1).cdf(0.5, 0.5) == doctest::Approx(0.375).epsilon(1e-10));
  CHECK_THROWS_AS(beta_bernoulli_joint(0, 1), InvalidInput);
  CHECK_THROWS_AS(beta_bernoulli_joint(1, -2), InvalidInput);
  // The unnormalised slices underflow everywhere.
  CHECK_THROWS_AS(beta_bernoulli_joint(1e4, 1e4), NumericError);
  const MixedJoint steep = beta_bernoulli_joint(2000, 3);
  CHECK(steep.has_declared_positivity());
  CHECK(steep.positive(0.01, 0));
  CHECK_FALSE(steep.positive(0.0, 0));
  CHECK(steep.slice_density(0)(0.01) == 0.0);
}

TEST_CASE("mixed joint validation") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(MixedJoint::make(Axis::Y, {0, 1}, {0.5, 0.5}, {one}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(MixedJoint::make(Axis::Y, {1, 0}, {0.5, 0.5}, {one, one}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(MixedJoint::make(Axis::Y, {0, 1}, {0.5, 0.4}, {one, one}, {0, 1}), InvalidDistribution);
  const MixedJoint ok = MixedJoint::make(Axis::Y, {0, 1}, {0.25, 0.75}, {one, one}, {0, 1});
  CHECK(ok.total_mass() == doctest::Approx(1.0));
  CHECK(ok.cdf(0.5, 0) == doctest::Approx(0.125));
  CHECK(ok.cdf(0.5, 1) == doctest::Approx(0.5));
}

TEST_CASE("continuous joints") {
  auto uu = [](double x, double y) { return unit_cdf(x) * unit_cdf(y); };
  const ContinuousJoint c = ContinuousJoint::from_cdf(uu, {0, 1, 0, 1});
  CHECK(c.mode() == ContinuousJoint::Mode::CdfBacked);
  CHECK(c.density(0.3, 0.7) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c.marginal_x(0.3) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(ContinuousJoint::from_cdf([&](double x, double y) { return 0.5 * uu(x, y); }, {0, 1, 0, 1}),
                  InvalidDistribution);
  CHECK_THROWS_AS(ContinuousJoint::from_cdf([&](double x, double y) { return 1 - uu(x, y) + (x >= 1 && y >= 1); },
                                            {0, 1, 0, 1}),
                  InvalidDistribution);
  auto flat = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(ContinuousJoint::from_pdf(flat, {}, {0, 1, 0, 1}), InvalidInput);
  const ContinuousJoint forced = ContinuousJoint::from_pdf(flat, {}, {0, 1, 0, 1}, true);
  CHECK(forced.positive(0.5, 0.5));

  const ContinuousJoint nn = product_joint(normal_distribution(), normal_distribution());
  CHECK(nn.density(0, 0) == doctest::Approx(1 / (2 * std::numbers::pi)).epsilon(1e-6));
  CHECK(nn.marginal_x(1.0) == doctest::Approx(phi(1.0)).epsilon(1e-6));
}

TEST_CASE("pushforward of a linear stretch") {
  auto one = [](double, double) { return 1.0; };
  auto in_unit = [](double x, double y) { return 0 <= x && x <= 1 && 0 <= y && y <= 1; };
  const ContinuousJoint src = ContinuousJoint::from_pdf(one, in_unit, {0, 1, 0, 1});
  const ContinuousJoint img = pushforward(
      src, [](Point2 p) -> std::optional<Point2> { return Point2{p.x / 2, p.y}; }, {0, 2, 0, 1});
  CHECK(img.density(1.3, 0.4) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(img.positive(1.9, 0.5));
  CHECK_FALSE(img.positive(1.9, 1.5));
}
