#include "suppind/set_model.hpp"

#include <algorithm>
#include <cmath>

#include "suppind/errors.hpp"

namespace suppind {

namespace {

bool close_to(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

// ---------------------------------------------------------------------------
// ClosedSet1D

ClosedSet1D ClosedSet1D::point(double x) {
  const double atoms[] = {x};
  return closure1d({}, atoms);
}

ClosedSet1D ClosedSet1D::interval(double lo, double hi) {
  const RawInterval raw[] = {closed_interval(lo, hi)};
  return closure1d(raw, {});
}

double ClosedSet1D::lebesgue_measure() const {
  double m = 0.0;
  for (const auto& iv : intervals_) m += iv.length();
  return m;
}

bool ClosedSet1D::contains(double x, double tol) const {
  return !empty() && distance(x) <= tol;
}

double ClosedSet1D::distance(double x) const {
  double d = kInf;
  for (const auto& iv : intervals_) {
    if (iv.contains(x)) return 0.0;
    d = std::min({d, std::abs(x - iv.lo), std::abs(x - iv.hi)});
  }
  for (double a : atoms_) d = std::min(d, std::abs(x - a));
  return d;
}

double ClosedSet1D::min() const {
  double m = kInf;
  if (!intervals_.empty()) m = intervals_.front().lo;
  if (!atoms_.empty()) m = std::min(m, atoms_.front());
  return m;
}

double ClosedSet1D::max() const {
  double m = -kInf;
  if (!intervals_.empty()) m = intervals_.back().hi;
  if (!atoms_.empty()) m = std::max(m, atoms_.back());
  return m;
}

ClosedSet1D ClosedSet1D::with_unbounded(bool left, bool right, Clip clip) const {
  ClosedSet1D out = *this;
  out.unbounded_left_ = left;
  out.unbounded_right_ = right;
  out.clip_ = clip;
  return out;
}

ClosedSet1D closure1d(std::span<const RawInterval> intervals, std::span<const double> atoms,
                      std::span<const double> declared_limit_points, Clip clip) {
  if (!(clip.lo < clip.hi)) throw InvalidInput("clip window must satisfy lo < hi");

  ClosedSet1D out;
  out.clip_ = clip;

  std::vector<Interval> ivs;
  std::vector<double> pts;
  for (const auto& raw : intervals) {
    if (std::isnan(raw.lo) || std::isnan(raw.hi)) throw InvalidInput("interval endpoint is NaN");
    if (raw.lo > raw.hi) throw InvalidInput("interval with lo > hi");
    if (raw.lo == raw.hi && !(raw.lo_closed && raw.hi_closed)) continue;  // empty
    double lo = raw.lo;
    double hi = raw.hi;
    if (lo == -kInf) {
      out.unbounded_left_ = true;
      lo = std::min(clip.lo, hi);
    }
    if (hi == kInf) {
      out.unbounded_right_ = true;
      hi = std::max(clip.hi, lo);
    }
    if (std::isinf(lo) || std::isinf(hi)) throw InvalidInput("interval lies at infinity");
    if (lo == hi) {
      pts.push_back(lo);
    } else {
      ivs.push_back({lo, hi});
    }
  }
  auto add_points = [&](std::span<const double> src) {
    for (double a : src) {
      if (!std::isfinite(a)) throw InvalidInput("atom must be finite");
      pts.push_back(a);
    }
  };
  add_points(atoms);
  add_points(declared_limit_points);

  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : ivs) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
    } else {
      out.intervals_.push_back(iv);
    }
  }

  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (double a : pts) {
    const bool inside = std::any_of(out.intervals_.begin(), out.intervals_.end(),
                                    [a](const Interval& iv) { return iv.contains(a); });
    if (!inside) out.atoms_.push_back(a);
  }
  return out;
}

ClosedSet1D closure1d(const ClosedSet1D& set) {
  std::vector<RawInterval> raw;
  for (const auto& iv : set.intervals()) raw.push_back(closed_interval(iv.lo, iv.hi));
  return closure1d(raw, set.atoms(), {}, set.clip())
      .with_unbounded(set.unbounded_left(), set.unbounded_right(), set.clip());
}

ClosedSet1D set_union(const ClosedSet1D& a, const ClosedSet1D& b) {
  std::vector<RawInterval> raw;
  std::vector<double> pts;
  for (const auto* s : {&a, &b}) {
    for (const auto& iv : s->intervals()) raw.push_back(closed_interval(iv.lo, iv.hi));
    pts.insert(pts.end(), s->atoms().begin(), s->atoms().end());
  }
  const Clip clip{std::min(a.clip().lo, b.clip().lo), std::max(a.clip().hi, b.clip().hi)};
  return closure1d(raw, pts, {}, clip)
      .with_unbounded(a.unbounded_left() || b.unbounded_left(),
                      a.unbounded_right() || b.unbounded_right(), clip);
}

namespace {

// sup over a in A of d(a, B). d(., B) is piecewise linear, so on an interval
// of A its maximum sits at an endpoint or at the midpoint of a gap of B.
double directed_hausdorff(const ClosedSet1D& a, const ClosedSet1D& b) {
  std::vector<Interval> pieces = b.intervals();
  for (double x : b.atoms()) pieces.push_back({x, x});
  std::sort(pieces.begin(), pieces.end(), [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  std::vector<double> gap_mids;
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    if (pieces[k].lo > pieces[k - 1].hi) gap_mids.push_back(0.5 * (pieces[k - 1].hi + pieces[k].lo));
  }

  double worst = 0.0;
  for (double x : a.atoms()) worst = std::max(worst, b.distance(x));
  for (const auto& iv : a.intervals()) {
    worst = std::max({worst, b.distance(iv.lo), b.distance(iv.hi)});
    for (double m : gap_mids) {
      if (iv.contains(m)) worst = std::max(worst, b.distance(m));
    }
  }
  return worst;
}

}  // namespace

double hausdorff(const ClosedSet1D& a, const ClosedSet1D& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return kInf;
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

LimitPointScan limit_points1d(std::span<const double> atoms, double tol, std::size_t min_cluster) {
  LimitPointScan scan;
  std::vector<double> pts(atoms.begin(), atoms.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::size_t start = 0;
  for (std::size_t k = 1; k <= pts.size(); ++k) {
    const bool chained = k < pts.size() && pts[k] - pts[k - 1] <= tol;
    if (chained) continue;
    const std::size_t size = k - start;
    if (size >= std::max<std::size_t>(min_cluster, 2)) {
      const double first_gap = pts[start + 1] - pts[start];
      const double last_gap = pts[k - 1] - pts[k - 2];
      scan.candidates.push_back(first_gap <= last_gap ? pts[start] : pts[k - 1]);
    }
    start = k;
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Grid2D

Grid2D::Grid2D(Box2D box, int nx, int ny) : box_(box), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) throw InvalidInput("grid needs at least one cell per axis");
  if (!(box.x_lo < box.x_hi) || !(box.y_lo < box.y_hi)) throw InvalidInput("grid box must have positive area");
}

std::optional<int> Grid2D::cell_x(double x) const {
  const double eps = 1e-9 * hx();
  if (x < box_.x_lo - eps || x > box_.x_hi + eps) return std::nullopt;
  const int i = static_cast<int>(std::floor((x - box_.x_lo) / hx()));
  return std::clamp(i, 0, nx_ - 1);
}

std::optional<int> Grid2D::cell_y(double y) const {
  const double eps = 1e-9 * hy();
  if (y < box_.y_lo - eps || y > box_.y_hi + eps) return std::nullopt;
  const int j = static_cast<int>(std::floor((y - box_.y_lo) / hy()));
  return std::clamp(j, 0, ny_ - 1);
}

bool Grid2D::same_resolution(const Grid2D& other) const {
  return std::abs(hx() - other.hx()) <= 1e-9 * hx() && std::abs(hy() - other.hy()) <= 1e-9 * hy();
}

// ---------------------------------------------------------------------------
// Region2D

double Rect::distance(double x, double y) const {
  const double dx = std::max({x_lo - x, 0.0, x - x_hi});
  const double dy = std::max({y_lo - y, 0.0, y - y_hi});
  return std::hypot(dx, dy);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::Product: return "product";
    case Provenance::GridEstimated: return "grid-estimated";
  }
  return "unknown";
}

std::string to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::Area: return "area";
    case MeasureKind::Length: return "length";
    case MeasureKind::Count: return "count";
  }
  return "unknown";
}

namespace {

struct CellRange {
  int first = 0;
  int last = -1;
};

// Cells along one axis whose centers lie in [lo, hi]; falls back to the cell
// holding the midpoint.
CellRange axis_cells(double lo, double hi, double origin, double h, int n) {
  const double eps = 1e-9;
  const int first = static_cast<int>(std::ceil((lo - origin) / h - 0.5 - eps));
  const int last = static_cast<int>(std::floor((hi - origin) / h - 0.5 + eps));
  const int a = std::max(first, 0);
  const int b = std::min(last, n - 1);
  if (a <= b) return {a, b};
  const double mid = 0.5 * (lo + hi);
  const double t = (mid - origin) / h;
  if (t < -eps || t > n + eps) return {};
  const int c = std::clamp(static_cast<int>(std::floor(t)), 0, n - 1);
  return {c, c};
}

}  // namespace

void rasterize_rect(const Rect& r, const Grid2D& grid, Mask& mask) {
  const auto& box = grid.box();
  const CellRange xs = axis_cells(r.x_lo, r.x_hi, box.x_lo, grid.hx(), grid.nx());
  const CellRange ys = axis_cells(r.y_lo, r.y_hi, box.y_lo, grid.hy(), grid.ny());
  if (xs.first > xs.last || ys.first > ys.last) return;
  mask.block(xs.first, ys.first, xs.last - xs.first + 1, ys.last - ys.first + 1).setConstant(1);
}

Region2D Region2D::from_indicator(Indicator2D indicator, const Grid2D& grid, Provenance provenance) {
  Region2D r;
  r.grid_ = grid;
  r.provenance_ = provenance;
  r.mask_ = Mask::Zero(grid.nx(), grid.ny());
  r.padding_ = Mask::Zero(grid.nx(), grid.ny());
  for (int j = 0; j < grid.ny(); ++j) {
    const double y = grid.y_center(j);
    for (int i = 0; i < grid.nx(); ++i) {
      r.mask_(i, j) = indicator(grid.x_center(i), y) ? 1 : 0;
    }
  }
  r.indicator_ = std::move(indicator);
  return r;
}

Region2D Region2D::from_mask(Mask mask, const Grid2D& grid, Provenance provenance) {
  if (mask.rows() != grid.nx() || mask.cols() != grid.ny()) {
    throw InvalidInput("mask shape does not match grid");
  }
  Region2D r;
  r.grid_ = grid;
  r.provenance_ = provenance;
  r.mask_ = std::move(mask);
  r.padding_ = Mask::Zero(grid.nx(), grid.ny());
  return r;
}

Region2D Region2D::from_components(std::vector<Rect> components, const Grid2D& grid,
                                   Provenance provenance) {
  Region2D r;
  r.grid_ = grid;
  r.provenance_ = provenance;
  r.mask_ = Mask::Zero(grid.nx(), grid.ny());
  r.padding_ = Mask::Zero(grid.nx(), grid.ny());
  for (const auto& c : components) {
    if (c.x_lo > c.x_hi || c.y_lo > c.y_hi) throw InvalidInput("rectangle with lo > hi");
    rasterize_rect(c, grid, r.mask_);
  }
  r.components_ = std::move(components);
  return r;
}

std::size_t Region2D::cell_count() const {
  return static_cast<std::size_t>((mask_ != 0).count());
}

bool Region2D::empty() const {
  if (components_) return components_->empty();
  return cell_count() == 0;
}

bool Region2D::contains(double x, double y) const {
  if (components_) {
    return std::any_of(components_->begin(), components_->end(),
                       [&](const Rect& r) { return r.contains(x, y); });
  }
  if (indicator_) return indicator_(x, y);
  const auto i = grid_.cell_x(x);
  const auto j = grid_.cell_y(y);
  return i && j && mask_(*i, *j) != 0;
}

Region2D Region2D::with_closure_padding() const {
  Region2D out = *this;
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  out.padding_ = Mask::Zero(nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (mask_(i, j) != 0) continue;
      bool touches = false;
      for (int dj = -1; dj <= 1 && !touches; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int a = i + di;
          const int b = j + dj;
          if (a >= 0 && a < nx && b >= 0 && b < ny && mask_(a, b) != 0) {
            touches = true;
            break;
          }
        }
      }
      out.padding_(i, j) = touches ? 1 : 0;
    }
  }
  return out;
}

Region2D Region2D::on_grid(const Grid2D& grid) const {
  if (grid == grid_) return *this;
  if (components_) return from_components(*components_, grid, provenance_);
  if (indicator_) return from_indicator(indicator_, grid, provenance_);
  if (!grid.same_resolution(grid_)) throw InvalidInput("cannot resample a mask-only region to a new resolution");

  const double ox = (grid_.box().x_lo - grid.box().x_lo) / grid.hx();
  const double oy = (grid_.box().y_lo - grid.box().y_lo) / grid.hy();
  const int ix = static_cast<int>(std::lround(ox));
  const int iy = static_cast<int>(std::lround(oy));
  if (std::abs(ox - ix) > 1e-6 || std::abs(oy - iy) > 1e-6) {
    throw InvalidInput("mask-only region is not aligned with the target grid");
  }
  Mask m = Mask::Zero(grid.nx(), grid.ny());
  Mask pad = Mask::Zero(grid.nx(), grid.ny());
  for (int j = 0; j < grid_.ny(); ++j) {
    for (int i = 0; i < grid_.nx(); ++i) {
      const int a = i + ix;
      const int b = j + iy;
      if (a < 0 || a >= grid.nx() || b < 0 || b >= grid.ny()) continue;
      m(a, b) = mask_(i, j);
      pad(a, b) = padding_(i, j);
    }
  }
  Region2D out = from_mask(std::move(m), grid, provenance_);
  out.padding_ = std::move(pad);
  return out;
}

Region2D cartesian_product(const ClosedSet1D& a, const ClosedSet1D& b, std::optional<Grid2D> grid) {
  if (!grid) {
    auto extent = [](const ClosedSet1D& s) {
      if (s.empty()) return Interval{0.0, 1.0};
      double lo = s.min();
      double hi = s.max();
      if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
      }
      return Interval{lo, hi};
    };
    const Interval ex = extent(a);
    const Interval ey = extent(b);
    grid = Grid2D({ex.lo, ex.hi, ey.lo, ey.hi}, kDefaultGridCells, kDefaultGridCells);
  }

  auto pieces = [](const ClosedSet1D& s) {
    std::vector<Interval> out = s.intervals();
    for (double x : s.atoms()) out.push_back({x, x});
    return out;
  };
  std::vector<Rect> comps;
  for (const auto& px : pieces(a)) {
    for (const auto& py : pieces(b)) comps.push_back({px.lo, px.hi, py.lo, py.hi});
  }
  return Region2D::from_components(std::move(comps), *grid, Provenance::Product);
}

Tolerance default_tolerance(const Grid2D& grid) {
  return {10.0 * grid.cell_area(), 2.0 * std::max(grid.hx(), grid.hy())};
}

Tolerance exact_tolerance() { return {0.0, 1e-9}; }

// ---------------------------------------------------------------------------
// Distance transform and comparisons

namespace {

// Squared distance transform along one line (lower envelope of parabolas).
// Sites are indices with finite f; positions are index * h.
void distance_transform_1d(const std::vector<double>& f, double h, std::vector<double>& out) {
  const int n = static_cast<int>(f.size());
  out.assign(n, kInf);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    const double pq = q * h;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    auto intersect = [&](int site) {
      const double pv = site * h;
      return ((f[q] + pq * pq) - (f[site] + pv * pv)) / (2.0 * (pq - pv));
    };
    double s = intersect(v[k]);
    while (s <= z[k]) {  // z[0] = -inf stops the walk
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) return;
  int j = 0;
  for (int x = 0; x < n; ++x) {
    const double px = x * h;
    while (z[j + 1] < px) ++j;
    const double d = px - v[j] * h;
    out[x] = d * d + f[v[j]];
  }
}

// Squared Euclidean distance from every cell center to the nearest set cell.
Eigen::ArrayXXd squared_distance_to(const Mask& set, const Grid2D& grid) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  Eigen::ArrayXXd d(nx, ny);
  std::vector<double> f;
  std::vector<double> out;
  for (int i = 0; i < nx; ++i) {
    f.assign(ny, kInf);
    for (int j = 0; j < ny; ++j) {
      if (set(i, j) != 0) f[j] = 0.0;
    }
    distance_transform_1d(f, grid.hy(), out);
    for (int j = 0; j < ny; ++j) d(i, j) = out[j];
  }
  for (int j = 0; j < ny; ++j) {
    f.resize(nx);
    for (int i = 0; i < nx; ++i) f[i] = d(i, j);
    distance_transform_1d(f, grid.hx(), out);
    for (int i = 0; i < nx; ++i) d(i, j) = out[i];
  }
  return d;
}

ComparisonReport compare_masks(const Mask& a, const Mask& b, const Grid2D& grid, Tolerance tol,
                               std::size_t max_witnesses) {
  ComparisonReport rep;
  rep.measure_kind = MeasureKind::Area;
  const Mask diff = ((a != 0) != (b != 0)).cast<std::uint8_t>();
  const auto count = static_cast<std::size_t>((diff != 0).count());
  rep.sym_diff_measure = static_cast<double>(count) * grid.cell_area();
  rep.hausdorff = mask_hausdorff(a, b, grid);

  if (count > 0 && max_witnesses > 0) {
    const std::size_t stride = std::max<std::size_t>(1, count / max_witnesses);
    std::size_t seen = 0;
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        if (diff(i, j) == 0) continue;
        if (seen % stride == 0 && rep.witnesses.size() < max_witnesses) {
          rep.witnesses.push_back({grid.x_center(i), grid.y_center(j)});
          rep.witness_in_first.push_back(a(i, j) != 0);
        }
        ++seen;
      }
    }
  }
  rep.equal_within_tol = rep.sym_diff_measure <= tol.area && rep.hausdorff <= tol.dist;
  return rep;
}

struct Piece {
  double rep = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Elementary pieces of the line induced by the breakpoints: each breakpoint
// and each open gap between consecutive breakpoints.
std::vector<Piece> elementary_pieces(std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts) {
    if (merged.empty() || !close_to(merged.back(), c)) merged.push_back(c);
  }
  std::vector<Piece> out;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    out.push_back({merged[k], merged[k], merged[k]});
    if (k + 1 < merged.size()) {
      out.push_back({0.5 * (merged[k] + merged[k + 1]), merged[k], merged[k + 1]});
    }
  }
  return out;
}

bool contains_tol(const std::vector<Rect>& rs, double x, double y) {
  return std::any_of(rs.begin(), rs.end(), [&](const Rect& r) {
    const double ex = 1e-12 * std::max({1.0, std::abs(r.x_lo), std::abs(r.x_hi)});
    const double ey = 1e-12 * std::max({1.0, std::abs(r.y_lo), std::abs(r.y_hi)});
    return r.x_lo - ex <= x && x <= r.x_hi + ex && r.y_lo - ey <= y && y <= r.y_hi + ey;
  });
}

double distance_to(const std::vector<Rect>& rs, double x, double y) {
  double d = kInf;
  for (const auto& r : rs) d = std::min(d, r.distance(x, y));
  return d;
}

constexpr std::size_t kExactComponentLimit = 2000;

ComparisonReport compare_exact(const std::vector<Rect>& p, const std::vector<Rect>& q, Tolerance tol,
                               std::size_t max_witnesses) {
  ComparisonReport rep;
  rep.exact = true;

  std::vector<double> xcuts;
  std::vector<double> ycuts;
  for (const auto* set : {&p, &q}) {
    for (const auto& r : *set) {
      xcuts.insert(xcuts.end(), {r.x_lo, r.x_hi});
      ycuts.insert(ycuts.end(), {r.y_lo, r.y_hi});
    }
  }
  const auto xs = elementary_pieces(std::move(xcuts));
  const auto ys = elementary_pieces(std::move(ycuts));

  double area = 0.0;
  double length = 0.0;
  std::size_t count = 0;
  double haus = 0.0;
  struct Diff {
    Point2 at;
    bool in_first;
    int dim;
  };
  std::vector<Diff> diffs;

  for (const auto& px : xs) {
    for (const auto& py : ys) {
      const bool in_p = contains_tol(p, px.rep, py.rep);
      const bool in_q = contains_tol(q, px.rep, py.rep);
      if (in_p == in_q) continue;
      const int dim = (px.length() > 0 ? 1 : 0) + (py.length() > 0 ? 1 : 0);
      if (dim == 2) {
        area += px.length() * py.length();
      } else if (dim == 1) {
        length += std::max(px.length(), py.length());
      } else {
        ++count;
      }
      const auto& other = in_p ? q : p;
      for (double x : {px.lo, px.rep, px.hi}) {
        for (double y : {py.lo, py.rep, py.hi}) haus = std::max(haus, distance_to(other, x, y));
      }
      diffs.push_back({{px.rep, py.rep}, in_p, dim});
    }
  }

  if (area > 0) {
    rep.sym_diff_measure = area;
    rep.measure_kind = MeasureKind::Area;
  } else if (length > 0) {
    rep.sym_diff_measure = length;
    rep.measure_kind = MeasureKind::Length;
  } else {
    rep.sym_diff_measure = static_cast<double>(count);
    rep.measure_kind = MeasureKind::Count;
  }
  rep.hausdorff = (p.empty() != q.empty()) ? kInf : haus;

  if (!diffs.empty() && max_witnesses > 0) {
    const std::size_t stride = std::max<std::size_t>(1, diffs.size() / max_witnesses);
    for (std::size_t k = 0; k < diffs.size() && rep.witnesses.size() < max_witnesses; k += stride) {
      rep.witnesses.push_back(diffs[k].at);
      rep.witness_in_first.push_back(diffs[k].in_first);
    }
  }
  rep.equal_within_tol = rep.sym_diff_measure <= tol.area && rep.hausdorff <= tol.dist;
  return rep;
}

}  // namespace

double mask_hausdorff(const Mask& a, const Mask& b, const Grid2D& grid) {
  const bool a_empty = (a != 0).count() == 0;
  const bool b_empty = (b != 0).count() == 0;
  if (a_empty && b_empty) return 0.0;
  if (a_empty || b_empty) return kInf;
  const Eigen::ArrayXXd to_b = squared_distance_to(b, grid);
  const Eigen::ArrayXXd to_a = squared_distance_to(a, grid);
  double worst = 0.0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (a(i, j) != 0) worst = std::max(worst, to_b(i, j));
      if (b(i, j) != 0) worst = std::max(worst, to_a(i, j));
    }
  }
  return std::sqrt(worst);
}

ComparisonReport region_compare(const Region2D& p, const Region2D& q, Tolerance tol,
                                std::size_t max_witnesses) {
  if (p.exact() && q.exact() &&
      p.components()->size() + q.components()->size() <= kExactComponentLimit) {
    return compare_exact(*p.components(), *q.components(), tol, max_witnesses);
  }
  if (p.grid() == q.grid()) {
    return compare_masks(p.mask(), q.mask(), p.grid(), tol, max_witnesses);
  }
  if (!p.grid().same_resolution(q.grid())) {
    throw InvalidInput("region_compare: grid resolutions differ");
  }
  const auto& a = p.grid().box();
  const auto& b = q.grid().box();
  const Box2D box{std::min(a.x_lo, b.x_lo), std::max(a.x_hi, b.x_hi), std::min(a.y_lo, b.y_lo),
                  std::max(a.y_hi, b.y_hi)};
  const int nx = static_cast<int>(std::lround(box.width() / p.grid().hx()));
  const int ny = static_cast<int>(std::lround(box.height() / p.grid().hy()));
  const Grid2D grid(box, std::max(nx, 1), std::max(ny, 1));
  return compare_masks(p.on_grid(grid).mask(), q.on_grid(grid).mask(), grid, tol, max_witnesses);
}

}  // namespace suppind
