#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "suppind/builtins.hpp"
#include "suppind/independence_check.hpp"
#include "suppind/support_engine.hpp"

using namespace suppind;

namespace {

ScreeningResult screen(const SupportReport& r) { return necessary_condition(r.s_xy, r.s_x, r.s_y); }

std::vector<Atom1> random_pmf(std::mt19937_64& rng, int size) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<Atom1> a;
  double total = 0;
  for (int k = 0; k < size; ++k) {
    a.push_back({double(k) + u(rng), u(rng)});
    total += a.back().p;
  }
  for (auto& x : a) x.p /= total;
  return a;
}

// Random table on a 5x5 lattice, some cells zeroed, renormalised.
DiscreteJoint random_table(std::mt19937_64& rng, int n = 5, double zero_prob = 0.25) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Atom2> atoms;
  double total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (u(rng) < zero_prob) continue;
      atoms.push_back({double(i), double(j), 0.01 + u(rng)});
      total += atoms.back().p;
    }
  }
  if (atoms.empty()) atoms.push_back({0, 0, total = 1});
  for (auto& a : atoms) a.p /= total;
  return DiscreteJoint::make(atoms, {}, 1e-9);
}

}  // namespace

TEST_CASE("necessary condition examples") {
  const ScreeningResult darts = screen(support_report(darts_joint(), 512, 512));
  CHECK(darts.screening == Screening::DependentBySupport);
  CHECK(std::abs(darts.comparison.sym_diff_measure - (4 - std::numbers::pi)) <= 10 * 2.0 / 512);

  const ScreeningResult ex7 = screen(support_report(example7_joint(), 512, 512));
  CHECK(ex7.screening == Screening::Inconclusive);

  const ScreeningResult ex9 = screen(support_report(example9_joint(), 512, 512));
  CHECK(ex9.screening == Screening::DependentBySupport);
  for (const auto& w : ex9.witnesses) CHECK(w.source == "support");

  const ScreeningResult srs = screen(support_report(srs_table()));
  CHECK(srs.screening == Screening::DependentBySupport);
  REQUIRE(srs.witnesses.size() == 3);
  for (const auto& w : srs.witnesses) {
    CHECK(w.x == w.y);
    CHECK(w.lhs == 0.0);
    CHECK(w.rhs == 1.0);
  }
  CHECK(screen(support_report(iid_table())).screening == Screening::Inconclusive);
}

TEST_CASE("discrete factorization oracle") {
  const OracleReport iid = discrete_factorization_oracle(iid_table());
  CHECK(iid.result == OracleResult::Independent);
  CHECK(iid.max_residual <= 1e-12);
  CHECK(iid.probes == 9);

  const OracleReport srs = discrete_factorization_oracle(srs_table());
  CHECK(srs.result == OracleResult::Dependent);
  CHECK(srs.max_residual == doctest::Approx(1.0 / 9));
  REQUIRE(srs.worst.has_value());
  CHECK(srs.worst->lhs == 0.0);
  CHECK(srs.worst->rhs == doctest::Approx(1.0 / 9));
  CHECK(srs.worst->x == srs.worst->y);

  std::mt19937_64 rng(2);
  const auto px = MarginalPMF::make(random_pmf(rng, 4));
  const auto py = MarginalPMF::make(random_pmf(rng, 6));
  CHECK(discrete_factorization_oracle(outer_product(px, py)).result == OracleResult::Independent);
}

TEST_CASE("continuous factorization probe") {
  const ContinuousJoint ex7 = example7_joint();
  const std::vector<Point2> centre{{0.5, 0.5}};
  CHECK(continuous_factorization_probe(ex7, centre).result == OracleResult::ConsistentWithIndependence);
  const std::vector<Point2> corner{{0.1, 0.1}};
  const OracleReport r = continuous_factorization_probe(ex7, corner);
  CHECK(r.result == OracleResult::Dependent);
  REQUIRE(r.worst.has_value());
  CHECK(r.worst->lhs == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(r.worst->rhs == doctest::Approx(0.36).epsilon(1e-6));
  CHECK(r.max_residual >= 0.1);

  const ContinuousJoint nn = product_normal_joint();
  const auto probes = default_probe_points({-3, 3, -3, 3}, 42, 5, 0);
  REQUIRE(probes.size() == 25);
  CHECK(continuous_factorization_probe(nn, probes).result == OracleResult::ConsistentWithIndependence);

  const std::vector<Point2> origin{{0, 0}};
  const OracleReport d = continuous_factorization_probe(darts_joint(), origin);
  CHECK(d.result == OracleResult::Dependent);
  CHECK(d.worst->lhs == doctest::Approx(1 / std::numbers::pi));
  CHECK(d.worst->rhs == doctest::Approx(4 / (std::numbers::pi * std::numbers::pi)));

  // Probes off the box are skipped.
  const std::vector<Point2> outside{{5, 5}};
  CHECK(continuous_factorization_probe(ex7, outside).probes == 0);
}

TEST_CASE("cdf factorization probe") {
  auto u = [](double t) { return std::clamp(t, 0.0, 1.0); };
  auto uu = [u](double x, double y) { return u(x) * u(y); };
  const auto pts = default_probe_points({0, 1, 0, 1}, 1);
  CHECK(cdf_factorization_probe(uu, u, u, pts).result == OracleResult::ConsistentWithIndependence);

  const DiscreteJoint srs = srs_table();
  const auto [px, py] = marginals(srs);
  const std::vector<Point2> mid{{4.5, 4.5}};
  const OracleReport s = cdf_factorization_probe([&](double x, double y) { return srs.cdf(x, y); },
                                                 [&](double x) { return px.cdf(x); },
                                                 [&](double y) { return py.cdf(y); }, mid);
  CHECK(s.result == OracleResult::Dependent);
  CHECK(s.worst->lhs == 0.0);
  CHECK(s.worst->rhs == doctest::Approx(1.0 / 9));

  const MixedJoint bb = beta_bernoulli_joint(1, 1);
  const std::vector<Point2> half{{0.5, 0.5}};
  const OracleReport b = cdf_factorization_probe([&](double x, double y) { return bb.cdf(x, y); },
                                                 [&](double x) { return bb.continuous_cdf(x); },
                                                 [&](double y) { return bb.discrete_cdf(y); }, half);
  CHECK(b.result == OracleResult::Dependent);
  CHECK(b.worst->lhs == doctest::Approx(0.375).epsilon(1e-10));
  CHECK(b.worst->rhs == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("conditional support check") {
  const ConditionalCheck srs = conditional_support_check(srs_table());
  CHECK(srs.screening == Screening::DependentBySupport);
  CHECK(srs.offending_x == std::vector<double>{4, 5, 7});
  CHECK(conditional_support_check(iid_table()).screening == Screening::Inconclusive);
  const ConditionalCheck bb = conditional_support_check(beta_bernoulli_joint(2, 3));
  CHECK(bb.screening == Screening::Inconclusive);
  CHECK(bb.offending_x.empty());
  CHECK(bb.offending_y.empty());
}

TEST_CASE("n-ary check") {
  NaryTable coins;
  NaryTable parity;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        coins.points.push_back({double(a), double(b), double(c)});
        coins.p.push_back(0.125);
        if ((a ^ b ^ c) == 0) {
          parity.points.push_back({double(a), double(b), double(c)});
          parity.p.push_back(0.25);
        }
      }
    }
  }
  const NaryCheck ci = nary_discrete_check(coins);
  CHECK(ci.screening == Screening::Inconclusive);
  CHECK(ci.support_size == 8);
  const NaryCheck cp = nary_discrete_check(parity);
  CHECK(cp.screening == Screening::DependentBySupport);
  CHECK(cp.support_size == 4);
  CHECK(cp.product_size == 8);
  CHECK(cp.missing.size() == 4);

  for (const DiscreteJoint& j : {iid_table(), srs_table()}) {
    NaryTable t;
    for (const auto& a : j.atoms()) {
      t.points.push_back({a.x, a.y});
      t.p.push_back(a.p);
    }
    CHECK(nary_discrete_check(t).screening == screen(support_report(j)).screening);
  }
}

TEST_CASE("soundness over random outer products") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8);
  int false_alarms = 0;
  int not_independent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto px = MarginalPMF::make(random_pmf(rng, size(rng)));
    const auto py = MarginalPMF::make(random_pmf(rng, size(rng)));
    const DiscreteJoint j = outer_product(px, py);
    if (screen(support_report(j)).screening == Screening::DependentBySupport) ++false_alarms;
    if (discrete_factorization_oracle(j).result != OracleResult::Independent) ++not_independent;
  }
  CHECK(false_alarms == 0);
  CHECK(not_independent == 0);
}

TEST_CASE("contrapositive consistency on dependent joints") {
  std::mt19937_64 rng(77);
  int contradictions = 0;
  int flagged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DiscreteJoint j = random_table(rng);
    const Verdict v = make_verdict(screen(support_report(j)), discrete_factorization_oracle(j));
    if (v.oracle == OracleResult::Independent && v.screening == Screening::DependentBySupport) ++contradictions;
    if (v.screening == Screening::DependentBySupport) ++flagged;
  }
  CHECK(contradictions == 0);
  CHECK(flagged > 0);
}

TEST_CASE("conditional check agrees with the necessary condition on finite tables") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const DiscreteJoint j = random_table(rng, 5, trial % 3 == 0 ? 0.0 : 0.2);
    CHECK(conditional_support_check(j).screening == screen(support_report(j)).screening);
  }
}

TEST_CASE("probe points") {
  const Box2D box{0, 2, -1, 1};
  const auto a = default_probe_points(box, 42);
  const auto b = default_probe_points(box, 42);
  const auto c = default_probe_points(box, 43);
  CHECK(a.size() == 69);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) {
    CHECK(p.x > box.x_lo);
    CHECK(p.x < box.x_hi);
    CHECK(p.y > box.y_lo);
    CHECK(p.y < box.y_hi);
  }
}

TEST_CASE("verdicts") {
  const Verdict srs = make_verdict(screen(support_report(srs_table())), discrete_factorization_oracle(srs_table()));
  CHECK(srs.screening == Screening::DependentBySupport);
  CHECK(srs.oracle == OracleResult::Dependent);
  CHECK(srs.gap == 3);
  CHECK(srs.gap_kind == MeasureKind::Count);
  CHECK(srs.witnesses.size() >= 3);

  const Verdict none = make_verdict(screen(support_report(iid_table())), std::nullopt);
  CHECK_FALSE(none.oracle.has_value());
  CHECK(none.screening == Screening::Inconclusive);
}
