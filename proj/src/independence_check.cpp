#include "suppind/independence_check.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "suppind/errors.hpp"
#include "suppind/support_engine.hpp"

namespace suppind {

std::string to_string(Screening s) {
  return s == Screening::DependentBySupport ? "DependentBySupport" : "Inconclusive";
}

std::string to_string(OracleResult r) {
  switch (r) {
    case OracleResult::Independent: return "Independent";
    case OracleResult::Dependent: return "Dependent";
    case OracleResult::ConsistentWithIndependence: return "ConsistentWithIndependence";
  }
  return "unknown";
}

ScreeningResult necessary_condition(const Region2D& s_xy, const ClosedSet1D& s_x, const ClosedSet1D& s_y,
                                    std::optional<Tolerance> tol) {
  const Region2D product = cartesian_product(s_x, s_y, s_xy.grid());
  const bool exact = s_xy.exact() && product.exact();
  const Tolerance t = tol.value_or(exact ? exact_tolerance() : default_tolerance(s_xy.grid()));

  ScreeningResult out;
  out.comparison = region_compare(s_xy, product, t);
  out.screening = out.comparison.equal_within_tol ? Screening::Inconclusive : Screening::DependentBySupport;
  for (std::size_t k = 0; k < out.comparison.witnesses.size(); ++k) {
    const Point2 w = out.comparison.witnesses[k];
    const bool in_joint = out.comparison.witness_in_first[k];
    out.witnesses.push_back({w.x, w.y, in_joint ? 1.0 : 0.0, in_joint ? 0.0 : 1.0, "support"});
  }
  return out;
}

OracleReport discrete_factorization_oracle(const DiscreteJoint& joint, double tol) {
  const auto [px, py] = marginals(joint);
  OracleReport rep;
  rep.result = OracleResult::Independent;
  for (const auto& a : px.atoms()) {
    for (const auto& b : py.atoms()) {
      const double lhs = joint.pmf(a.x, b.x);
      const double rhs = a.p * b.p;
      const double r = std::abs(lhs - rhs);
      ++rep.probes;
      if (!rep.worst || r > rep.max_residual) {
        rep.max_residual = r;
        rep.worst = Witness{a.x, b.x, lhs, rhs, "pmf"};
      }
    }
  }
  if (rep.max_residual > tol) rep.result = OracleResult::Dependent;
  return rep;
}

namespace {

bool on_kink(double v, const std::vector<double>& kinks) {
  return std::any_of(kinks.begin(), kinks.end(), [v](double k) { return std::abs(v - k) <= 1e-9; });
}

template <typename Eval>
OracleReport probe(std::span<const Point2> probes, double tol, const char* source, Eval eval) {
  OracleReport rep;
  rep.result = OracleResult::ConsistentWithIndependence;
  for (const auto& p : probes) {
    const auto values = eval(p);
    if (!values) continue;
    const auto [lhs, rhs] = *values;
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) throw NumericError("probe evaluation is not finite");
    const double r = std::abs(lhs - rhs);
    ++rep.probes;
    if (!rep.worst || r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst = Witness{p.x, p.y, lhs, rhs, source};
    }
  }
  if (rep.max_residual > tol) rep.result = OracleResult::Dependent;
  return rep;
}

}  // namespace

OracleReport continuous_factorization_probe(const ContinuousJoint& joint, std::span<const Point2> probes,
                                            double tol) {
  const Box2D& b = joint.box();
  return probe(probes, tol, "pdf", [&](Point2 p) -> std::optional<std::pair<double, double>> {
    if (p.x < b.x_lo || p.x > b.x_hi || p.y < b.y_lo || p.y > b.y_hi) return std::nullopt;
    if (on_kink(p.x, joint.x_kinks()) || on_kink(p.y, joint.y_kinks())) return std::nullopt;
    return std::pair{joint.density(p.x, p.y), joint.marginal_x(p.x) * joint.marginal_y(p.y)};
  });
}

OracleReport cdf_factorization_probe(const Fn2D& joint_cdf, const Fn1D& cdf_x, const Fn1D& cdf_y,
                                     std::span<const Point2> probes, double tol) {
  return probe(probes, tol, "cdf", [&](Point2 p) -> std::optional<std::pair<double, double>> {
    return std::pair{joint_cdf(p.x, p.y), cdf_x(p.x) * cdf_y(p.y)};
  });
}

std::vector<Point2> default_probe_points(const Box2D& box, std::uint64_t seed, int chebyshev, int random) {
  std::vector<Point2> pts;
  auto node = [chebyshev](double lo, double hi, int k) {
    const double t = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * chebyshev));
    return 0.5 * (lo + hi) - 0.5 * (hi - lo) * t;
  };
  for (int i = 0; i < chebyshev; ++i) {
    for (int j = 0; j < chebyshev; ++j) {
      pts.push_back({node(box.x_lo, box.x_hi, i), node(box.y_lo, box.y_hi, j)});
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.x_lo, box.x_hi);
  std::uniform_real_distribution<double> uy(box.y_lo, box.y_hi);
  for (int k = 0; k < random; ++k) {
    const double x = ux(rng);
    pts.push_back({x, uy(rng)});
  }
  return pts;
}

ConditionalCheck conditional_support_check(const DiscreteJoint& joint) {
  const auto [px, py] = marginals(joint);
  const ClosedSet1D s_x = support_discrete(px);
  const ClosedSet1D s_y = support_discrete(py);
  ConditionalCheck out;
  for (const auto& a : px.atoms()) {
    if (!(conditional_support(joint, Axis::X, a.x) == s_y)) out.offending_x.push_back(a.x);
  }
  for (const auto& b : py.atoms()) {
    if (!(conditional_support(joint, Axis::Y, b.x) == s_x)) out.offending_y.push_back(b.x);
  }
  if (!out.offending_x.empty() || !out.offending_y.empty()) out.screening = Screening::DependentBySupport;
  return out;
}

ConditionalCheck conditional_support_check(const MixedJoint& joint, int grid_n) {
  const SupportReport rep = support_report(joint, grid_n);
  const ClosedSet1D& s_cont = joint.discrete_axis() == Axis::Y ? rep.s_x : rep.s_y;
  const double h = joint.domain().length() / (grid_n - 1);
  ConditionalCheck out;
  for (const auto& slice : rep.slices) {
    if (hausdorff(slice.set, s_cont) > 2.0 * h) {
      (joint.discrete_axis() == Axis::Y ? out.offending_y : out.offending_x).push_back(slice.level);
    }
  }
  if (!out.offending_x.empty() || !out.offending_y.empty()) out.screening = Screening::DependentBySupport;
  return out;
}

NaryCheck nary_discrete_check(const NaryTable& table, std::size_t max_missing) {
  if (table.points.size() != table.p.size()) throw InvalidInput("n-ary table: points and masses differ in length");
  if (table.points.empty()) throw InvalidInput("n-ary table is empty");
  const std::size_t n = table.points.front().size();
  if (n < 2) throw InvalidInput("n-ary check needs at least two coordinates");

  std::set<std::vector<double>> support;
  std::vector<std::set<double>> margins(n);
  for (std::size_t r = 0; r < table.points.size(); ++r) {
    if (table.points[r].size() != n) throw InvalidInput("n-ary table rows differ in dimension");
    if (table.p[r] < 0) throw InvalidDistribution("negative probability mass");
    if (table.p[r] == 0) continue;
    if (!support.insert(table.points[r]).second) throw InvalidInput("duplicate tuple in n-ary table");
    for (std::size_t d = 0; d < n; ++d) margins[d].insert(table.points[r][d]);
  }

  NaryCheck out;
  out.support_size = support.size();
  double product = 1.0;
  for (const auto& m : margins) product *= static_cast<double>(m.size());
  if (product > 1e7) throw InvalidInput("marginal product too large to enumerate");
  out.product_size = static_cast<std::size_t>(product);

  // Odometer over the product of the marginal atom sets.
  std::vector<std::vector<double>> axes;
  for (const auto& m : margins) axes.emplace_back(m.begin(), m.end());
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> tuple(n);
  for (std::size_t count = 0; count < out.product_size; ++count) {
    for (std::size_t d = 0; d < n; ++d) tuple[d] = axes[d][idx[d]];
    if (!support.contains(tuple) && out.missing.size() < max_missing) out.missing.push_back(tuple);
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < axes[d].size()) break;
      idx[d] = 0;
    }
  }
  if (out.support_size != out.product_size) out.screening = Screening::DependentBySupport;
  return out;
}

Verdict make_verdict(const ScreeningResult& screening, const std::optional<OracleReport>& oracle) {
  Verdict v;
  v.screening = screening.screening;
  v.gap = screening.comparison.sym_diff_measure;
  v.gap_kind = screening.comparison.measure_kind;
  v.hausdorff = screening.comparison.hausdorff;
  v.witnesses = screening.witnesses;
  if (oracle) {
    v.oracle = oracle->result;
    if (oracle->worst && oracle->result == OracleResult::Dependent) v.witnesses.push_back(*oracle->worst);
    if (oracle->result == OracleResult::Independent && v.screening == Screening::DependentBySupport) {
      v.notes.emplace_back("inconsistent: factorization oracle says Independent but supports do not factor");
    }
  }
  if (v.screening == Screening::Inconclusive) {
    v.notes.emplace_back("supports factor; this is necessary for independence but does not establish it");
  }
  return v;
}

}  // namespace suppind
