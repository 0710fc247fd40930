#pragma once

// Support-factorization screening plus exact and probe-based factorization
// oracles.
//
// The screen can only ever prove dependence: when S_XY differs from
// S_X x S_Y the variables are dependent, when they agree nothing follows.
// The oracles check the factorization itself, exactly for finite PMFs and
// at finitely many probe points otherwise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "suppind/dist_model.hpp"
#include "suppind/set_model.hpp"

namespace suppind {

enum class Screening { DependentBySupport, Inconclusive };
enum class OracleResult { Independent, Dependent, ConsistentWithIndependence };

std::string to_string(Screening s);
std::string to_string(OracleResult r);

// A point where two sides disagree. For support witnesses lhs/rhs are the
// memberships (1/0) in S_XY and S_X x S_Y; for oracle witnesses they are the
// joint value and the product of marginals.
struct Witness {
  double x = 0.0;
  double y = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string source;
};

struct ScreeningResult {
  Screening screening = Screening::Inconclusive;
  ComparisonReport comparison;
  std::vector<Witness> witnesses;
};

// Compares S_XY with S_X x S_Y (rasterised on S_XY's grid). Tolerances
// default to exact_tolerance() when both sides are exact, else to
// default_tolerance() of the grid.
ScreeningResult necessary_condition(const Region2D& s_xy, const ClosedSet1D& s_x, const ClosedSet1D& s_y,
                                    std::optional<Tolerance> tol = std::nullopt);

struct OracleReport {
  OracleResult result = OracleResult::ConsistentWithIndependence;
  double max_residual = 0.0;
  std::optional<Witness> worst;
  std::size_t probes = 0;
};

// Independent iff |p_XY - p_X p_Y| <= tol over the product of the marginal
// atom sets.
OracleReport discrete_factorization_oracle(const DiscreteJoint& joint, double tol = 1e-12);

constexpr double kDefaultProbeTol = 1e-3;

// Dependent when |f_XY - f_X f_Y| > tol at some probe. Probes outside the
// box or on declared kink lines are skipped.
OracleReport continuous_factorization_probe(const ContinuousJoint& joint, std::span<const Point2> probes,
                                            double tol = kDefaultProbeTol);

// Same test on CDFs.
OracleReport cdf_factorization_probe(const Fn2D& joint_cdf, const Fn1D& cdf_x, const Fn1D& cdf_y,
                                     std::span<const Point2> probes, double tol = kDefaultProbeTol);

// 7x7 Chebyshev nodes over the box interior plus `random` uniform points
// drawn from a generator seeded with `seed`.
std::vector<Point2> default_probe_points(const Box2D& box, std::uint64_t seed, int chebyshev = 7, int random = 20);

struct ConditionalCheck {
  Screening screening = Screening::Inconclusive;
  // Conditioning values whose conditional support differs from the margin.
  std::vector<double> offending_x;
  std::vector<double> offending_y;
};

ConditionalCheck conditional_support_check(const DiscreteJoint& joint);
// Compares each level's slice support with the continuous margin's support.
ConditionalCheck conditional_support_check(const MixedJoint& joint, int grid_n = 4097);

// Finite joint PMF over R^n: one tuple per row.
struct NaryTable {
  std::vector<std::vector<double>> points;
  std::vector<double> p;
};

struct NaryCheck {
  Screening screening = Screening::Inconclusive;
  std::size_t support_size = 0;
  std::size_t product_size = 0;
  // Tuples of the marginal product that carry no mass (first few).
  std::vector<std::vector<double>> missing;
};

// Compares the atom set with the n-fold product of the marginal atom sets.
NaryCheck nary_discrete_check(const NaryTable& table, std::size_t max_missing = 16);

struct Verdict {
  Screening screening = Screening::Inconclusive;
  std::optional<OracleResult> oracle;
  double gap = 0.0;
  MeasureKind gap_kind = MeasureKind::Area;
  double hausdorff = 0.0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
};

Verdict make_verdict(const ScreeningResult& screening, const std::optional<OracleReport>& oracle);

}  // namespace suppind
