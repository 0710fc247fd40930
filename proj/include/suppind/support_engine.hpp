#pragma once

// Support sets of discrete, continuous, mixed and sampled distributions.

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "suppind/dist_model.hpp"
#include "suppind/set_model.hpp"

namespace suppind {

enum class SupportMethod { ClosureOfAtoms, CanonicalPdfGrid, NeighborhoodProbe, PointsOfIncrease, EmpiricalGrid };
enum class Amiability { Yes, No, Unknown };

std::string to_string(SupportMethod m);
std::string to_string(Amiability a);

struct LevelSlice {
  double level = 0.0;
  ClosedSet1D set;
};

struct SupportReport {
  ClosedSet1D s_x;
  ClosedSet1D s_y;
  Region2D s_xy;
  SupportMethod method = SupportMethod::ClosureOfAtoms;
  // Only meaningful for PMF margins; empty otherwise.
  std::optional<Amiability> amiable_x;
  std::optional<Amiability> amiable_y;
  // Mixed joints: S_XY as one closed set per discrete level.
  std::optional<Axis> slice_axis;
  std::vector<LevelSlice> slices;
  std::vector<std::string> notes;
};

// Parameters of the accumulation heuristic used for undeclared limit points.
struct ClusterHeuristic {
  double tol = 1e-6;
  std::size_t min_cluster = 5;
};

// Closure of the atom set together with the declared limit points.
ClosedSet1D support_discrete(const MarginalPMF& pmf);

// Yes: no limit points outside the atoms, declared or suspected. No: a
// declared limit point carries no mass. Unknown: only heuristic clusters.
Amiability amiability_check(const MarginalPMF& pmf, ClusterHeuristic heuristic = {});

// Which ends of a numeric domain are clip edges rather than true bounds.
struct ClipEdges {
  bool left = false;
  bool right = false;
};

// Closure of the union of grid cells (grid_n points, grid_n - 1 cells) whose
// center density exceeds kPositivityEps. A positive cell at a clip edge sets
// the matching unbounded flag. Returns the empty set for an all-zero density
// unless `mass_known` is set, in which case that throws InvalidDistribution.
ClosedSet1D support_continuous_1d(const Fn1D& density, Interval domain, int grid_n, ClipEdges clip = {},
                                  bool mass_known = false);

// Closure of the union of cells with positive CDF increment.
ClosedSet1D support_neighborhood_1d(const Fn1D& cdf, Interval domain, int grid_n);

// Schedule {4h, 2h, h} for grid width h.
std::vector<double> default_eps_schedule(double h);

// Grid points x with F(x + e) > F(x - e) for every e in the schedule;
// consecutive passing points close into intervals, isolated ones into atoms.
// Throws InvalidDistribution when F decreases along the grid.
ClosedSet1D points_of_increase_1d(const Fn1D& cdf, Interval domain, int grid_n,
                                  std::vector<double> eps_list = {});

// Experimental. Cell centers where F increases strictly in each coordinate
// separately (others held fixed) for every probed step.
Region2D points_of_increase_2d(const Fn2D& cdf, const Grid2D& grid);

// Cells holding at least `min_count` samples. Samples outside the box are
// ignored. Rows of `samples` are (x, y).
Region2D empirical_support(const Eigen::MatrixX2d& samples, const Grid2D& grid, int min_count = 1);

// Positivity mask of the joint's canonical or declared density at cell
// centers, with one-cell closure padding.
Region2D support_region_2d(const ContinuousJoint& joint, const Grid2D& grid);

// Exact union of slices (one closed set per level).
Region2D support_region_2d(const MixedJoint& joint, int grid_n);

ClosedSet1D conditional_support(const DiscreteJoint& joint, Axis conditioning_axis, double value);
ClosedSet1D conditional_support(const MixedJoint& joint, Axis conditioning_axis, double value, int grid_n);

// Grid points per axis used for slice and marginal supports of mixed joints.
constexpr int kDefaultLineGrid = 4097;

SupportReport support_report(const DiscreteJoint& joint, ClusterHeuristic heuristic = {});
SupportReport support_report(const ContinuousJoint& joint, int nx, int ny);
SupportReport support_report(const MixedJoint& joint, int grid_n = kDefaultLineGrid);
SupportReport support_report_empirical(const Eigen::MatrixX2d& samples, const Grid2D& grid, int min_count);

// Smallest box holding all samples; degenerate sides widen by 0.5 each way.
Box2D sample_box(const Eigen::MatrixX2d& samples);

// Projection of a mask onto one axis as a closed union of cell intervals.
ClosedSet1D project_mask(const Region2D& region, Axis axis);

}  // namespace suppind
