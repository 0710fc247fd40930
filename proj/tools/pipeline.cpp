#include "pipeline.hpp"

#include <sstream>

#include "suppind/errors.hpp"

namespace suppind::cli {

namespace {

std::optional<Tolerance> tolerance_override(const CheckOptions& opt, const Grid2D& grid, bool exact) {
  if (!opt.tol_area && !opt.tol_dist) return std::nullopt;
  const Tolerance base = exact ? exact_tolerance() : default_tolerance(grid);
  return Tolerance{opt.tol_area.value_or(base.area), opt.tol_dist.value_or(base.dist)};
}

ScreeningResult screen(const SupportReport& rep, const CheckOptions& opt) {
  const bool exact = rep.s_xy.exact();
  return necessary_condition(rep.s_xy, rep.s_x, rep.s_y, tolerance_override(opt, rep.s_xy.grid(), exact));
}

std::vector<Point2> probes_for(const Box2D& box, const CheckOptions& opt) {
  std::vector<Point2> pts = opt.extra_probes;
  const auto d = default_probe_points(box, opt.seed);
  pts.insert(pts.end(), d.begin(), d.end());
  return pts;
}

[[noreturn]] void unsupported(const char* oracle, const char* input) {
  throw InvalidInput(std::string("oracle '") + oracle + "' is not available for " + input);
}

void add_conditional_notes(Verdict& v, const ConditionalCheck& c) {
  std::ostringstream os;
  os.precision(12);
  os << "conditional supports: " << to_string(c.screening);
  if (!c.offending_x.empty()) {
    os << "; S_Y|X=x differs from S_Y at x in {";
    for (std::size_t k = 0; k < c.offending_x.size(); ++k) os << (k ? ", " : "") << c.offending_x[k];
    os << "}";
  }
  if (!c.offending_y.empty()) {
    os << "; S_X|Y=y differs from S_X at y in {";
    for (std::size_t k = 0; k < c.offending_y.size(); ++k) os << (k ? ", " : "") << c.offending_y[k];
    os << "}";
  }
  v.notes.push_back(os.str());
}

}  // namespace

OracleChoice parse_oracle(const std::string& s) {
  if (s == "auto") return OracleChoice::Auto;
  if (s == "exact") return OracleChoice::Exact;
  if (s == "probe") return OracleChoice::Probe;
  if (s == "cdf") return OracleChoice::Cdf;
  if (s == "none") return OracleChoice::None;
  throw InvalidInput("unknown oracle '" + s + "' (auto, exact, probe, cdf, none)");
}

SupportReport support_of(const DiscreteJoint& j) { return support_report(j); }
SupportReport support_of(const ContinuousJoint& j, int grid) { return support_report(j, grid, grid); }
SupportReport support_of(const MixedJoint& j) { return support_report(j); }

CheckOutcome check(const DiscreteJoint& j, const CheckOptions& opt) {
  CheckOutcome c;
  c.support = support_of(j);
  c.screening = screen(c.support, opt);
  switch (opt.oracle) {
    case OracleChoice::Auto:
    case OracleChoice::Exact:
      c.oracle = discrete_factorization_oracle(j);
      break;
    case OracleChoice::Cdf: {
      const auto [px, py] = marginals(j);
      // Probe between and beyond the atoms, where step CDFs are unambiguous.
      std::vector<Point2> pts = opt.extra_probes;
      auto cuts = [](const MarginalPMF& m) {
        std::vector<double> xs = m.values();
        std::vector<double> out;
        for (std::size_t k = 0; k + 1 < xs.size(); ++k) out.push_back(0.5 * (xs[k] + xs[k + 1]));
        out.push_back(xs.back() + 1.0);
        return out;
      };
      for (double x : cuts(px)) {
        for (double y : cuts(py)) pts.push_back({x, y});
      }
      c.oracle = cdf_factorization_probe([&j](double x, double y) { return j.cdf(x, y); },
                                         [px](double x) { return px.cdf(x); }, [py](double y) { return py.cdf(y); },
                                         pts, opt.probe_tol);
      break;
    }
    case OracleChoice::Probe:
      unsupported("probe", "a discrete table (use exact or cdf)");
    case OracleChoice::None:
      break;
  }
  c.verdict = make_verdict(c.screening, c.oracle);
  add_conditional_notes(c.verdict, conditional_support_check(j));
  for (const auto& n : c.support.notes) c.verdict.notes.push_back(n);
  return c;
}

CheckOutcome check(const ContinuousJoint& j, int grid, const CheckOptions& opt) {
  CheckOutcome c;
  c.support = support_of(j, grid);
  c.screening = screen(c.support, opt);
  switch (opt.oracle) {
    case OracleChoice::Auto:
    case OracleChoice::Probe:
      c.oracle = continuous_factorization_probe(j, probes_for(j.box(), opt), opt.probe_tol);
      break;
    case OracleChoice::Cdf: {
      if (!j.cdf()) unsupported("cdf", "a joint without a CDF");
      const Box2D b = j.box();
      const Fn2D F = *j.cdf();
      c.oracle = cdf_factorization_probe(F, [F, b](double x) { return F(x, b.y_hi); },
                                         [F, b](double y) { return F(b.x_hi, y); }, probes_for(b, opt),
                                         opt.probe_tol);
      break;
    }
    case OracleChoice::Exact:
      unsupported("exact", "a continuous joint (use probe or cdf)");
    case OracleChoice::None:
      break;
  }
  c.verdict = make_verdict(c.screening, c.oracle);
  if (c.oracle) c.verdict.notes.emplace_back("probe oracles test finitely many points and never prove independence");
  for (const auto& n : c.support.notes) c.verdict.notes.push_back(n);
  return c;
}

CheckOutcome check(const MixedJoint& j, const CheckOptions& opt) {
  CheckOutcome c;
  c.support = support_of(j);
  c.screening = screen(c.support, opt);
  switch (opt.oracle) {
    case OracleChoice::Auto:
    case OracleChoice::Cdf: {
      const bool disc_y = j.discrete_axis() == Axis::Y;
      Fn1D fx = [j, disc_y](double x) { return disc_y ? j.continuous_cdf(x) : j.discrete_cdf(x); };
      Fn1D fy = [j, disc_y](double y) { return disc_y ? j.discrete_cdf(y) : j.continuous_cdf(y); };
      c.oracle = cdf_factorization_probe([j](double x, double y) { return j.cdf(x, y); }, fx, fy,
                                         probes_for(c.support.s_xy.grid().box(), opt), opt.probe_tol);
      break;
    }
    case OracleChoice::Exact:
      unsupported("exact", "a mixed joint (use cdf)");
    case OracleChoice::Probe:
      unsupported("probe", "a mixed joint (use cdf)");
    case OracleChoice::None:
      break;
  }
  c.verdict = make_verdict(c.screening, c.oracle);
  add_conditional_notes(c.verdict, conditional_support_check(j));
  for (const auto& n : c.support.notes) c.verdict.notes.push_back(n);
  return c;
}

CheckOutcome check_samples(const Eigen::MatrixX2d& samples, int grid, int min_count, const CheckOptions& opt) {
  if (opt.oracle != OracleChoice::Auto && opt.oracle != OracleChoice::None) {
    unsupported("exact/probe/cdf", "samples");
  }
  CheckOutcome c;
  c.support = support_report_empirical(samples, Grid2D(sample_box(samples), grid, grid), min_count);
  c.screening = screen(c.support, opt);
  c.verdict = make_verdict(c.screening, std::nullopt);
  for (const auto& n : c.support.notes) c.verdict.notes.push_back(n);
  return c;
}

json univariate_support_json(const Univariate& u, const std::string& source, int grid_points) {
  const Fn1D density = u.pdf ? *u.pdf : canonical_density(u.cdf);
  const ClosedSet1D by_pdf =
      support_continuous_1d(density, u.window, grid_points, {u.unbounded_left, u.unbounded_right});
  const ClosedSet1D by_increase = points_of_increase_1d(u.cdf, u.window, grid_points);
  const ClosedSet1D by_neighborhood = support_neighborhood_1d(u.cdf, u.window, grid_points);
  const double h = u.window.length() / (grid_points - 1);

  json out;
  out["kind"] = "support1d";
  out["source"] = source;
  out["window"] = json::array({u.window.lo, u.window.hi});
  out["grid_points"] = grid_points;
  out["methods"] = {{to_string(SupportMethod::CanonicalPdfGrid), to_json(by_pdf)},
                    {to_string(SupportMethod::PointsOfIncrease), to_json(by_increase)},
                    {to_string(SupportMethod::NeighborhoodProbe), to_json(by_neighborhood)}};
  auto h_or_null = [](double d) { return std::isfinite(d) ? json(d) : json(nullptr); };
  out["hausdorff"] = {{"increase_vs_neighborhood", h_or_null(hausdorff(by_increase, by_neighborhood))},
                      {"increase_vs_pdf", h_or_null(hausdorff(by_increase, by_pdf))}};
  std::vector<std::string> notes;
  std::ostringstream os;
  os << "grid width " << h << "; points-of-increase steps {4h, 2h, h}";
  notes.push_back(os.str());
  if (u.unbounded_left || u.unbounded_right) {
    std::ostringstream c;
    c << "clipped to [" << u.window.lo << ", " << u.window.hi << "]";
    if (u.unbounded_left) c << "; continues to -infinity";
    if (u.unbounded_right) c << "; continues to +infinity";
    notes.push_back(c.str());
  }
  if (by_pdf.empty()) {
    notes.emplace_back("canonical density is 0 at every grid point (CDF not differentiable there); "
                       "the CDF-based methods carry the support");
  }
  out["notes"] = notes;
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_support_files(const std::filesystem::path& dir, const SupportReport& rep, const std::string& source) {
  write_text(dir / "support.json", dump(to_json(rep, source)));
  write_text(dir / "mask.pgm", to_pgm(rep.s_xy));
  write_text(dir / "mask.csv", to_mask_csv(rep.s_xy));
}

void write_verdict_file(const std::filesystem::path& dir, const CheckOutcome& c) {
  write_text(dir / "verdict.json", dump(to_json(c.verdict, c.oracle)));
}

}  // namespace suppind::cli
