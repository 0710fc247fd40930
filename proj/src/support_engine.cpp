#include "suppind/support_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "suppind/errors.hpp"

namespace suppind {

std::string to_string(SupportMethod m) {
  switch (m) {
    case SupportMethod::ClosureOfAtoms: return "closure-of-atoms";
    case SupportMethod::CanonicalPdfGrid: return "canonical-pdf-grid";
    case SupportMethod::NeighborhoodProbe: return "neighborhood-probe";
    case SupportMethod::PointsOfIncrease: return "points-of-increase";
    case SupportMethod::EmpiricalGrid: return "empirical-grid";
  }
  return "unknown";
}

std::string to_string(Amiability a) {
  switch (a) {
    case Amiability::Yes: return "yes";
    case Amiability::No: return "no";
    case Amiability::Unknown: return "unknown";
  }
  return "unknown";
}

ClosedSet1D support_discrete(const MarginalPMF& pmf) {
  const auto xs = pmf.values();
  return closure1d({}, xs, pmf.declared_limit_points());
}

Amiability amiability_check(const MarginalPMF& pmf, ClusterHeuristic heuristic) {
  for (double lp : pmf.declared_limit_points()) {
    if (pmf.pmf(lp) <= 0) return Amiability::No;
  }
  const auto xs = pmf.values();
  const auto scan = limit_points1d(xs, heuristic.tol, heuristic.min_cluster);
  for (double c : scan.candidates) {
    const auto& lps = pmf.declared_limit_points();
    const bool explained = std::any_of(lps.begin(), lps.end(),
                                       [&](double lp) { return std::abs(lp - c) <= heuristic.tol; });
    if (!explained) return Amiability::Unknown;
  }
  return Amiability::Yes;
}

namespace {

// Closure of runs of flagged cells [lo + a h, lo + (b + 1) h].
ClosedSet1D close_cell_runs(const std::vector<bool>& on, Interval domain, double h) {
  std::vector<RawInterval> raw;
  const int n = static_cast<int>(on.size());
  int k = 0;
  while (k < n) {
    if (!on[k]) {
      ++k;
      continue;
    }
    int end = k;
    while (end + 1 < n && on[end + 1]) ++end;
    const double lo = domain.lo + k * h;
    const double hi = (end + 1 == n) ? domain.hi : domain.lo + (end + 1) * h;
    raw.push_back(closed_interval(lo, hi));
    k = end + 1;
  }
  return closure1d(raw, {}, {}, {domain.lo, domain.hi});
}

void check_domain(Interval domain, int grid_n) {
  if (grid_n < 2) throw InvalidInput("grid needs at least 2 points");
  if (!(domain.lo < domain.hi)) throw InvalidInput("domain must satisfy lo < hi");
}

}  // namespace

ClosedSet1D support_continuous_1d(const Fn1D& density, Interval domain, int grid_n, ClipEdges clip,
                                  bool mass_known) {
  check_domain(domain, grid_n);
  const int cells = grid_n - 1;
  const double h = domain.length() / cells;
  std::vector<bool> on(cells);
  bool any = false;
  for (int k = 0; k < cells; ++k) {
    on[k] = density(domain.lo + (k + 0.5) * h) > kPositivityEps;
    any = any || on[k];
  }
  if (!any) {
    if (mass_known) throw InvalidDistribution("density vanishes on the whole domain");
    return ClosedSet1D{}.with_unbounded(false, false, {domain.lo, domain.hi});
  }
  const ClosedSet1D set = close_cell_runs(on, domain, h);
  return set.with_unbounded(clip.left && on.front(), clip.right && on.back(), {domain.lo, domain.hi});
}

ClosedSet1D support_neighborhood_1d(const Fn1D& cdf, Interval domain, int grid_n) {
  check_domain(domain, grid_n);
  const int cells = grid_n - 1;
  const double h = domain.length() / cells;
  std::vector<bool> on(cells);
  double prev = cdf(domain.lo);
  for (int k = 0; k < cells; ++k) {
    const double next = cdf(k + 1 == cells ? domain.hi : domain.lo + (k + 1) * h);
    if (next < prev - 1e-12) throw InvalidDistribution("CDF decreases along the grid");
    on[k] = next > prev;
    prev = next;
  }
  return close_cell_runs(on, domain, h);
}

std::vector<double> default_eps_schedule(double h) { return {4.0 * h, 2.0 * h, h}; }

ClosedSet1D points_of_increase_1d(const Fn1D& cdf, Interval domain, int grid_n, std::vector<double> eps_list) {
  check_domain(domain, grid_n);
  const double h = domain.length() / (grid_n - 1);
  if (eps_list.empty()) eps_list = default_eps_schedule(h);
  for (double e : eps_list) {
    if (!(e > 0)) throw InvalidInput("probe widths must be positive");
  }

  std::vector<RawInterval> raw;
  std::vector<double> atoms;
  double prev = -kInf;
  int run_start = -1;
  auto close_run = [&](int last) {
    if (run_start < 0) return;
    const double lo = domain.lo + run_start * h;
    const double hi = domain.lo + last * h;
    if (last == run_start) {
      atoms.push_back(lo);
    } else {
      raw.push_back(closed_interval(lo, hi));
    }
    run_start = -1;
  };
  for (int k = 0; k < grid_n; ++k) {
    const double x = domain.lo + k * h;
    const double fx = cdf(x);
    if (fx < prev - 1e-12) throw InvalidDistribution("CDF decreases along the grid");
    prev = fx;
    const bool pass = std::all_of(eps_list.begin(), eps_list.end(),
                                  [&](double e) { return cdf(x + e) > cdf(x - e); });
    if (pass) {
      if (run_start < 0) run_start = k;
    } else {
      close_run(k - 1);
    }
  }
  close_run(grid_n - 1);
  return closure1d(raw, atoms, {}, {domain.lo, domain.hi});
}

Region2D points_of_increase_2d(const Fn2D& cdf, const Grid2D& grid) {
  const auto sx = default_eps_schedule(grid.hx());
  const auto sy = default_eps_schedule(grid.hy());
  Mask mask = Mask::Zero(grid.nx(), grid.ny());
  for (int j = 0; j < grid.ny(); ++j) {
    const double y = grid.y_center(j);
    for (int i = 0; i < grid.nx(); ++i) {
      const double x = grid.x_center(i);
      bool pass = true;
      for (std::size_t k = 0; k < sx.size() && pass; ++k) {
        pass = cdf(x + sx[k], y) > cdf(x - sx[k], y) && cdf(x, y + sy[k]) > cdf(x, y - sy[k]);
      }
      mask(i, j) = pass ? 1 : 0;
    }
  }
  return Region2D::from_mask(std::move(mask), grid, Provenance::GridEstimated);
}

Region2D empirical_support(const Eigen::MatrixX2d& samples, const Grid2D& grid, int min_count) {
  if (samples.rows() < 1) throw InvalidInput("empirical support needs at least one sample");
  if (min_count < 1) throw InvalidInput("min_count must be at least 1");
  Eigen::ArrayXXi counts = Eigen::ArrayXXi::Zero(grid.nx(), grid.ny());
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    const auto i = grid.cell_x(samples(r, 0));
    const auto j = grid.cell_y(samples(r, 1));
    if (i && j) ++counts(*i, *j);
  }
  Mask mask = (counts >= min_count).cast<std::uint8_t>();
  return Region2D::from_mask(std::move(mask), grid, Provenance::GridEstimated);
}

Region2D support_region_2d(const ContinuousJoint& joint, const Grid2D& grid) {
  const Provenance prov = joint.has_declared_positivity() ? Provenance::Analytic : Provenance::GridEstimated;
  return Region2D::from_indicator([joint](double x, double y) { return joint.positive(x, y); }, grid, prov)
      .with_closure_padding();
}

namespace {

std::vector<Rect> slice_components(const ClosedSet1D& set, double level, Axis discrete_axis) {
  std::vector<Rect> out;
  auto push = [&](double lo, double hi) {
    if (discrete_axis == Axis::Y) {
      out.push_back({lo, hi, level, level});
    } else {
      out.push_back({level, level, lo, hi});
    }
  };
  for (const auto& iv : set.intervals()) push(iv.lo, iv.hi);
  for (double a : set.atoms()) push(a, a);
  return out;
}

Interval widen_if_degenerate(double lo, double hi) {
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

std::vector<LevelSlice> mixed_slices(const MixedJoint& joint, int grid_n) {
  std::vector<LevelSlice> out;
  for (std::size_t k = 0; k < joint.levels().size(); ++k) {
    if (joint.weights()[k] <= 0) continue;
    auto indicator = [&joint, k](double t) { return joint.positive(t, k) ? 1.0 : 0.0; };
    out.push_back({joint.levels()[k], support_continuous_1d(indicator, joint.domain(), grid_n)});
  }
  return out;
}

Region2D region_from_slices(const std::vector<LevelSlice>& slices, const MixedJoint& joint) {
  std::vector<Rect> comps;
  for (const auto& s : slices) {
    auto c = slice_components(s.set, s.level, joint.discrete_axis());
    comps.insert(comps.end(), c.begin(), c.end());
  }
  const Interval levels = widen_if_degenerate(joint.levels().front(), joint.levels().back());
  const Interval dom = joint.domain();
  const Box2D box = joint.discrete_axis() == Axis::Y ? Box2D{dom.lo, dom.hi, levels.lo, levels.hi}
                                                     : Box2D{levels.lo, levels.hi, dom.lo, dom.hi};
  return Region2D::from_components(std::move(comps), Grid2D(box, kDefaultGridCells, kDefaultGridCells),
                                   Provenance::Analytic);
}

}  // namespace

Region2D support_region_2d(const MixedJoint& joint, int grid_n) {
  return region_from_slices(mixed_slices(joint, grid_n), joint);
}

ClosedSet1D conditional_support(const DiscreteJoint& joint, Axis conditioning_axis, double value) {
  std::vector<double> other;
  for (const auto& a : joint.atoms()) {
    const double key = conditioning_axis == Axis::X ? a.x : a.y;
    if (key == value) other.push_back(conditioning_axis == Axis::X ? a.y : a.x);
  }
  if (other.empty()) {
    throw InvalidInput("conditioning value " + std::to_string(value) + " has zero marginal mass");
  }
  return closure1d({}, other);
}

ClosedSet1D conditional_support(const MixedJoint& joint, Axis conditioning_axis, double value, int grid_n) {
  const auto& levels = joint.levels();
  if (conditioning_axis == joint.discrete_axis()) {
    const auto it = std::find(levels.begin(), levels.end(), value);
    const auto k = static_cast<std::size_t>(it - levels.begin());
    if (it == levels.end() || joint.weights()[k] <= 0) {
      throw InvalidInput("conditioning level " + std::to_string(value) + " has zero mass");
    }
    auto indicator = [&joint, k](double t) { return joint.positive(t, k) ? 1.0 : 0.0; };
    return support_continuous_1d(indicator, joint.domain(), grid_n);
  }
  if (!joint.domain().contains(value)) {
    throw InvalidInput("conditioning value lies outside the continuous domain");
  }
  std::vector<double> atoms;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (joint.positive(value, k)) atoms.push_back(levels[k]);
  }
  if (atoms.empty()) throw InvalidInput("conditioning value has zero density");
  return closure1d({}, atoms);
}

SupportReport support_report(const DiscreteJoint& joint, ClusterHeuristic heuristic) {
  const auto [px, py] = marginals(joint);
  SupportReport rep;
  rep.method = SupportMethod::ClosureOfAtoms;
  rep.s_x = support_discrete(px);
  rep.s_y = support_discrete(py);
  rep.amiable_x = amiability_check(px, heuristic);
  rep.amiable_y = amiability_check(py, heuristic);

  std::vector<Rect> comps;
  for (const auto& a : joint.atoms()) comps.push_back({a.x, a.x, a.y, a.y});
  for (const auto& p : joint.declared_limit_points()) comps.push_back({p.x, p.x, p.y, p.y});
  const Box2D bb = joint.bounding_box();
  const Interval ex = widen_if_degenerate(bb.x_lo, bb.x_hi);
  const Interval ey = widen_if_degenerate(bb.y_lo, bb.y_hi);
  rep.s_xy = Region2D::from_components(std::move(comps),
                                       Grid2D({ex.lo, ex.hi, ey.lo, ey.hi}, kDefaultGridCells, kDefaultGridCells),
                                       Provenance::Analytic);

  for (const auto* m : {&px, &py}) {
    const auto xs = m->values();
    const auto scan = limit_points1d(xs, heuristic.tol, heuristic.min_cluster);
    for (double c : scan.candidates) {
      std::ostringstream os;
      os << "heuristic accumulation candidate near " << c << " (" << (m == &px ? "x" : "y")
         << " margin); exact limit points must be declared";
      rep.notes.push_back(os.str());
    }
  }
  if (joint.renormalized()) rep.notes.emplace_back("input masses were renormalized to sum to 1");
  return rep;
}

namespace {

std::string clip_note(const char* axis, const ClosedSet1D& s) {
  std::ostringstream os;
  os << "S_" << axis << " clipped to [" << s.clip().lo << ", " << s.clip().hi << "]";
  if (s.unbounded_left()) os << "; continues to -infinity";
  if (s.unbounded_right()) os << "; continues to +infinity";
  return os.str();
}

}  // namespace

SupportReport support_report(const ContinuousJoint& joint, int nx, int ny) {
  const Box2D& box = joint.box();
  const Grid2D grid(box, nx, ny);
  SupportReport rep;
  rep.method = SupportMethod::CanonicalPdfGrid;
  rep.s_xy = support_region_2d(joint, grid);
  const auto& unb = joint.unbounded();
  rep.s_x = support_continuous_1d([&joint](double x) { return joint.marginal_x(x); }, {box.x_lo, box.x_hi}, nx + 1,
                                  {unb.x_lo, unb.x_hi});
  rep.s_y = support_continuous_1d([&joint](double y) { return joint.marginal_y(y); }, {box.y_lo, box.y_hi}, ny + 1,
                                  {unb.y_lo, unb.y_hi});
  if (unb.x_lo || unb.x_hi) rep.notes.push_back(clip_note("X", rep.s_x));
  if (unb.y_lo || unb.y_hi) rep.notes.push_back(clip_note("Y", rep.s_y));
  rep.notes.push_back(std::string("S_XY positivity from ") +
                      (joint.has_declared_positivity() ? "declared indicator" : "density > 1e-12") +
                      "; padding cells mark the closure");
  return rep;
}

SupportReport support_report(const MixedJoint& joint, int grid_n) {
  SupportReport rep;
  rep.method = SupportMethod::CanonicalPdfGrid;
  rep.slice_axis = joint.discrete_axis();
  rep.slices = mixed_slices(joint, grid_n);
  rep.s_xy = region_from_slices(rep.slices, joint);

  Fn1D continuous_marginal = [&joint](double t) {
    for (std::size_t k = 0; k < joint.levels().size(); ++k) {
      if (joint.positive(t, k)) return 1.0;
    }
    return 0.0;
  };
  const ClosedSet1D s_cont = support_continuous_1d(continuous_marginal, joint.domain(), grid_n);
  std::vector<double> lv;
  for (std::size_t k = 0; k < joint.levels().size(); ++k) {
    if (joint.weights()[k] > 0) lv.push_back(joint.levels()[k]);
  }
  const ClosedSet1D s_disc = closure1d({}, lv);
  if (joint.discrete_axis() == Axis::Y) {
    rep.s_x = s_cont;
    rep.s_y = s_disc;
  } else {
    rep.s_x = s_disc;
    rep.s_y = s_cont;
  }
  rep.notes.emplace_back("S_XY reported exactly as one closed slice per discrete level");
  return rep;
}

ClosedSet1D project_mask(const Region2D& region, Axis axis) {
  const Grid2D& g = region.grid();
  const bool along_x = axis == Axis::X;
  const int n = along_x ? g.nx() : g.ny();
  std::vector<bool> on(n);
  for (int k = 0; k < n; ++k) {
    on[k] = along_x ? (region.mask().row(k) != 0).any() : (region.mask().col(k) != 0).any();
  }
  const Interval dom = along_x ? Interval{g.box().x_lo, g.box().x_hi} : Interval{g.box().y_lo, g.box().y_hi};
  return close_cell_runs(on, dom, along_x ? g.hx() : g.hy());
}

Box2D sample_box(const Eigen::MatrixX2d& samples) {
  if (samples.rows() < 1) throw InvalidInput("no samples");
  const Interval ex = widen_if_degenerate(samples.col(0).minCoeff(), samples.col(0).maxCoeff());
  const Interval ey = widen_if_degenerate(samples.col(1).minCoeff(), samples.col(1).maxCoeff());
  return {ex.lo, ex.hi, ey.lo, ey.hi};
}

SupportReport support_report_empirical(const Eigen::MatrixX2d& samples, const Grid2D& grid, int min_count) {
  SupportReport rep;
  rep.method = SupportMethod::EmpiricalGrid;
  rep.s_xy = empirical_support(samples, grid, min_count);
  rep.s_x = project_mask(rep.s_xy, Axis::X);
  rep.s_y = project_mask(rep.s_xy, Axis::Y);
  std::ostringstream os;
  os << "empirical support from " << samples.rows() << " samples, min_count " << min_count;
  rep.notes.push_back(os.str());
  return rep;
}

}  // namespace suppind
