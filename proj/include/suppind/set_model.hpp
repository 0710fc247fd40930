#pragma once

// Closed subsets of R and R^2: normal-form closed sets on the line, grid
// regions in the plane, Cartesian products and tolerant comparison.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace suppind {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Interval as supplied by a caller; endpoints may be open and may be
// infinite.
struct RawInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;
};

inline RawInterval open_interval(double lo, double hi) { return {lo, hi, false, false}; }
inline RawInterval closed_interval(double lo, double hi) { return {lo, hi, true, true}; }

// Finite window used wherever an unbounded set has to be materialised.
struct Clip {
  double lo = -50.0;
  double hi = 50.0;
  friend bool operator==(const Clip&, const Clip&) = default;
};

// Finite union of disjoint closed intervals plus isolated atoms.
//
// Normal form: intervals sorted, pairwise disjoint and non-touching, each
// with lo < hi; atoms sorted, unique and outside every interval. A
// degenerate interval [a, a] is stored as the atom a. Unbounded components
// are stored clipped to `clip()` with the matching flag set.
class ClosedSet1D {
 public:
  ClosedSet1D() = default;

  static ClosedSet1D empty_set() { return {}; }
  static ClosedSet1D point(double x);
  static ClosedSet1D interval(double lo, double hi);

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<double>& atoms() const { return atoms_; }
  bool unbounded_left() const { return unbounded_left_; }
  bool unbounded_right() const { return unbounded_right_; }
  const Clip& clip() const { return clip_; }

  bool empty() const { return intervals_.empty() && atoms_.empty(); }
  std::size_t component_count() const { return intervals_.size() + atoms_.size(); }
  double lebesgue_measure() const;
  bool contains(double x, double tol = 0.0) const;
  double distance(double x) const;

  // Smallest and largest points of the (clipped) set. Requires !empty().
  double min() const;
  double max() const;

  // Same set with the given unboundedness flags and clip window.
  ClosedSet1D with_unbounded(bool left, bool right, Clip clip) const;

  friend bool operator==(const ClosedSet1D&, const ClosedSet1D&) = default;

 private:
  friend ClosedSet1D closure1d(std::span<const RawInterval>, std::span<const double>,
                               std::span<const double>, Clip);

  std::vector<Interval> intervals_;
  std::vector<double> atoms_;
  bool unbounded_left_ = false;
  bool unbounded_right_ = false;
  Clip clip_{};
};

// Closure of a finite description: open endpoints become closed, touching or
// overlapping intervals merge, atoms inside intervals are absorbed and the
// declared limit points are added. Infinite endpoints set the unbounded flag
// and are clipped to `clip`. Throws InvalidInput when lo > hi or a value is
// NaN.
ClosedSet1D closure1d(std::span<const RawInterval> intervals, std::span<const double> atoms,
                      std::span<const double> declared_limit_points = {}, Clip clip = {});

ClosedSet1D closure1d(const ClosedSet1D& set);

// Union of two closed sets (the result is closed). Flags are or-ed.
ClosedSet1D set_union(const ClosedSet1D& a, const ClosedSet1D& b);

// Exact Hausdorff distance between two non-empty clipped sets; +inf when
// exactly one is empty, 0 when both are.
double hausdorff(const ClosedSet1D& a, const ClosedSet1D& b);

struct LimitPointScan {
  // Exact limit points of the supplied finite set: always empty.
  std::vector<double> exact;
  // Accumulation candidates found by clustering. Heuristic only.
  std::vector<double> candidates;
  bool heuristic = true;
};

// A finite point set has no limit points. For truncated countable sets the
// scan also reports clusters of at least `min_cluster` atoms chained by gaps
// no larger than `tol`; each candidate is the end of the cluster where the
// gaps shrink.
LimitPointScan limit_points1d(std::span<const double> atoms, double tol,
                              std::size_t min_cluster = 5);

// ---------------------------------------------------------------------------
// Plane

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Box2D {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;

  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double area() const { return width() * height(); }
  friend bool operator==(const Box2D&, const Box2D&) = default;
};

// Uniform cell grid over a box; cell (i, j) spans
// [x_lo + i*hx, x_lo + (i+1)*hx] x [y_lo + j*hy, y_lo + (j+1)*hy].
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(Box2D box, int nx, int ny);

  const Box2D& box() const { return box_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return box_.width() / nx_; }
  double hy() const { return box_.height() / ny_; }
  double cell_area() const { return hx() * hy(); }
  double x_center(int i) const { return box_.x_lo + (i + 0.5) * hx(); }
  double y_center(int j) const { return box_.y_lo + (j + 0.5) * hy(); }

  // Cell containing the point, clamped at the upper box edge; nullopt
  // outside the box.
  std::optional<int> cell_x(double x) const;
  std::optional<int> cell_y(double y) const;

  bool same_resolution(const Grid2D& other) const;
  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  Box2D box_{};
  int nx_ = 1;
  int ny_ = 1;
};

using Mask = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using Indicator2D = std::function<bool(double, double)>;

// Closed axis-aligned rectangle; either side may be degenerate, so points
// and segments are Rects as well.
struct Rect {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  bool contains(double x, double y) const {
    return x_lo <= x && x <= x_hi && y_lo <= y && y <= y_hi;
  }
  double distance(double x, double y) const;
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Provenance { Analytic, Product, GridEstimated };

std::string to_string(Provenance p);

// Planar region as a boolean mask over a Grid2D, optionally carrying the
// indicator it was rasterised from and/or an exact list of closed
// rectangular components. `padding` marks cells added by the one-cell
// closure dilation; they are not part of `mask`.
class Region2D {
 public:
  Region2D() = default;

  // Cell is in when the indicator holds at its center.
  static Region2D from_indicator(Indicator2D indicator, const Grid2D& grid,
                                 Provenance provenance = Provenance::Analytic);
  static Region2D from_mask(Mask mask, const Grid2D& grid, Provenance provenance);
  // Exact union of closed rectangles, rasterised onto the grid.
  static Region2D from_components(std::vector<Rect> components, const Grid2D& grid,
                                  Provenance provenance);

  const Grid2D& grid() const { return grid_; }
  const Mask& mask() const { return mask_; }
  const Mask& padding() const { return padding_; }
  Provenance provenance() const { return provenance_; }
  const std::optional<std::vector<Rect>>& components() const { return components_; }
  bool has_indicator() const { return static_cast<bool>(indicator_); }
  bool exact() const { return components_.has_value(); }

  std::size_t cell_count() const;
  double area() const { return static_cast<double>(cell_count()) * grid_.cell_area(); }
  bool empty() const;

  // Exact membership when components or an indicator exist, else the cell
  // lookup.
  bool contains(double x, double y) const;

  // Adds closure padding: cells outside the mask that touch it (8-neighbour).
  Region2D with_closure_padding() const;

  // Re-rasterises onto another grid; needs components or an indicator.
  Region2D on_grid(const Grid2D& grid) const;

 private:
  Grid2D grid_{};
  Mask mask_;
  Mask padding_;
  Provenance provenance_ = Provenance::Analytic;
  Indicator2D indicator_;
  std::optional<std::vector<Rect>> components_;
};

// Rasterisation rule for one closed rectangle: along each axis mark the cells
// whose centers lie in the side; a side containing no center (including a
// degenerate side) marks the cell holding its midpoint.
void rasterize_rect(const Rect& r, const Grid2D& grid, Mask& mask);

// Default grid resolution for regions and products.
constexpr int kDefaultGridCells = 512;

// Product region with provenance Product. When `grid` is absent it spans the
// product of the sets' clipped extents at kDefaultGridCells per axis.
Region2D cartesian_product(const ClosedSet1D& a, const ClosedSet1D& b,
                           std::optional<Grid2D> grid = std::nullopt);

struct Tolerance {
  double area = 0.0;
  double dist = 0.0;
};

// Defaults scaled to the grid: 10 cell areas and two cell widths.
Tolerance default_tolerance(const Grid2D& grid);
// Defaults for exact (component) comparisons: zero measure, 1e-9 distance.
Tolerance exact_tolerance();

enum class MeasureKind { Area, Length, Count };

std::string to_string(MeasureKind k);

struct ComparisonReport {
  bool equal_within_tol = false;
  double sym_diff_measure = 0.0;
  MeasureKind measure_kind = MeasureKind::Area;
  double hausdorff = 0.0;
  std::vector<Point2> witnesses;
  // Witness membership in the first argument (true) or the second.
  std::vector<bool> witness_in_first;
  bool exact = false;
};

// Compares two regions. Exact when both carry components; otherwise cell
// masks on a common grid. Regions on different boxes with the same cell
// size are re-rasterised (or shifted) onto the union box; differing cell
// size throws InvalidInput.
ComparisonReport region_compare(const Region2D& p, const Region2D& q, Tolerance tol,
                                std::size_t max_witnesses = 16);

// Hausdorff distance between the cell-center sets of two masks on a grid.
double mask_hausdorff(const Mask& a, const Mask& b, const Grid2D& grid);

}  // namespace suppind
