#pragma once

// Discrete, continuous and mixed bivariate distributions, canonical density
// extraction from CDFs, Lebesgue mixtures and the Cantor construction.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "suppind/set_model.hpp"

namespace suppind {

using Fn1D = std::function<double(double)>;
using Fn2D = std::function<double(double, double)>;
using Indicator1D = std::function<bool(double)>;

// Positivity threshold for evaluated densities.
constexpr double kPositivityEps = 1e-12;

struct Atom1 {
  double x = 0.0;
  double p = 0.0;
};

struct Atom2 {
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;
};

// PMF on the line. Every stored atom has p > 0, so the atom set is exactly
// the positive-mass set. `truncation_mass` is the tail dropped when a
// countable PMF was cut off; it widens the mass check.
class MarginalPMF {
 public:
  static MarginalPMF make(std::vector<Atom1> atoms, std::vector<double> declared_limit_points = {},
                          double truncation_mass = 0.0, double mass_tol = 1e-12);

  const std::vector<Atom1>& atoms() const { return atoms_; }
  const std::vector<double>& declared_limit_points() const { return limit_points_; }
  double truncation_mass() const { return truncation_mass_; }
  std::vector<double> values() const;
  double mass() const;
  double pmf(double x) const;
  double cdf(double x) const;

 private:
  std::vector<Atom1> atoms_;  // sorted by x
  std::vector<double> limit_points_;
  double truncation_mass_ = 0.0;
};

// Finite joint PMF with atoms in the plane.
class DiscreteJoint {
 public:
  // Zero-mass rows are dropped; negative mass throws InvalidDistribution,
  // duplicate coordinates throw InvalidInput. Mass must be 1 within
  // `mass_tol` unless `renormalize` is set.
  static DiscreteJoint make(std::vector<Atom2> atoms, std::vector<Point2> declared_limit_points = {},
                            double mass_tol = 1e-12, bool renormalize = false);

  const std::vector<Atom2>& atoms() const { return atoms_; }
  const std::vector<Point2>& declared_limit_points() const { return limit_points_; }
  bool renormalized() const { return renormalized_; }
  double pmf(double x, double y) const;
  double cdf(double x, double y) const;
  Box2D bounding_box() const;

 private:
  std::vector<Atom2> atoms_;
  std::vector<Point2> limit_points_;
  bool renormalized_ = false;
};

// p_X(x) = sum_y p_XY(x, y) and likewise for Y; zero-mass values dropped.
std::pair<MarginalPMF, MarginalPMF> marginals(const DiscreteJoint& joint);

// Joint whose atoms are all pairs with p = p_X * p_Y.
DiscreteJoint outer_product(const MarginalPMF& px, const MarginalPMF& py);

// Countable PMF given by a term generator, truncated once the remaining tail
// drops below `tail_tol` (or at `max_terms`).
MarginalPMF truncated_pmf(const std::function<Atom1(std::size_t)>& term, double tail_tol = 1e-12,
                          std::size_t max_terms = 100000, std::vector<double> declared_limit_points = {});

MarginalPMF poisson_pmf(double eta);
MarginalPMF geometric_pmf(double p);
MarginalPMF binomial_pmf(int n, double p);
// p(2^-n) = 2^-n; limit point 0 is declared only when asked.
MarginalPMF halving_pmf(std::size_t terms, bool declare_limit_point);

// ---------------------------------------------------------------------------
// Canonical densities

struct DerivativeOptions {
  double step = 0.0;  // 0 selects the per-dimension default
  double kink_tol = 1e-3;
};

constexpr double kDefaultStep1D = 1e-5;
constexpr double kDefaultStep2D = 1e-4;

// Central difference of F at x when the one-sided quotients agree within
// kink_tol (relative), else 0. Throws InvalidDistribution if F decreases
// across the stencil.
double canonical_pdf_1d(const Fn1D& cdf, double x, DerivativeOptions opt = {});

// Mixed second difference of F at (x, y); 0 when the four one-quadrant
// mixed quotients disagree.
double canonical_pdf_2d(const Fn2D& cdf, double x, double y, DerivativeOptions opt = {});

// Density evaluator backed by canonical_pdf_1d.
Fn1D canonical_density(Fn1D cdf, DerivativeOptions opt = {});

// ---------------------------------------------------------------------------
// Univariate and continuous joints

// Distribution on the line described by its CDF (and optionally a density).
// `window` is the finite range used for numeric work; the flags say whether
// the true support extends past it.
struct Univariate {
  Fn1D cdf;
  std::optional<Fn1D> pdf;
  Interval window{0.0, 1.0};
  bool unbounded_left = false;
  bool unbounded_right = false;
};

Univariate normal_distribution(double clip = 6.0);
Univariate uniform_distribution(double lo = 0.0, double hi = 1.0);
Univariate exponential_distribution(double eta = 1.0, double clip = 50.0);
Univariate point_mass(double at);
Univariate discrete_distribution(const MarginalPMF& pmf);

double normal_cdf(double x);
double normal_pdf(double x);

// Sides of a box across which the support continues.
struct UnboundedSides {
  bool x_lo = false;
  bool x_hi = false;
  bool y_lo = false;
  bool y_hi = false;
};

class ContinuousJoint {
 public:
  enum class Mode { CdfBacked, PdfBacked };

  // Validates monotonicity on a probe grid and F(box max corner) ~ 1.
  static ContinuousJoint from_cdf(Fn2D cdf, Box2D box, Indicator2D positivity = {});
  // Requires a declared positivity indicator unless `force_threshold` is set,
  // in which case positivity is pdf > kPositivityEps.
  static ContinuousJoint from_pdf(Fn2D pdf, Indicator2D positivity, Box2D box,
                                  bool force_threshold = false);

  Mode mode() const { return mode_; }
  const Box2D& box() const { return box_; }
  const UnboundedSides& unbounded() const { return unbounded_; }
  bool has_declared_positivity() const { return static_cast<bool>(positivity_); }
  const std::optional<Fn2D>& cdf() const { return cdf_; }

  // Canonical density: the pdf in pdf-backed mode, else canonical_pdf_2d.
  double density(double x, double y) const;
  bool positive(double x, double y) const;

  // Marginal densities: user supplied, else 2048-panel Simpson over the box.
  double marginal_x(double x) const;
  double marginal_y(double y) const;
  bool has_analytic_marginals() const { return marginal_x_.has_value(); }

  ContinuousJoint with_marginals(Fn1D fx, Fn1D fy) const;
  // Attaches a joint CDF (used by CDF probes) without changing the mode.
  ContinuousJoint with_cdf(Fn2D cdf) const;
  ContinuousJoint with_unbounded(UnboundedSides sides) const;
  // Known non-smooth lines; probes avoid them.
  ContinuousJoint with_kinks(std::vector<double> x_kinks, std::vector<double> y_kinks) const;
  const std::vector<double>& x_kinks() const { return x_kinks_; }
  const std::vector<double>& y_kinks() const { return y_kinks_; }

 private:
  Mode mode_ = Mode::PdfBacked;
  std::optional<Fn2D> cdf_;
  std::optional<Fn2D> pdf_;
  Indicator2D positivity_;
  Box2D box_{};
  UnboundedSides unbounded_{};
  std::optional<Fn1D> marginal_x_;
  std::optional<Fn1D> marginal_y_;
  std::vector<double> x_kinks_;
  std::vector<double> y_kinks_;
};

ContinuousJoint product_joint(const Univariate& x, const Univariate& y);

using Map2D = std::function<Point2(Point2)>;

// Law of T(X) for an invertible map T: density f_X(T^-1 y) |det D T^-1(y)|
// (Jacobian by central differences), positivity pulled back through the
// inverse. `inverse` returns nullopt outside the image.
ContinuousJoint pushforward(const ContinuousJoint& source,
                            std::function<std::optional<Point2>(Point2)> inverse, Box2D target_box);

// ---------------------------------------------------------------------------
// Mixed joints

enum class Axis { X, Y };

// One coordinate takes finitely many levels; given level l the other has
// density slice_density[l] on `domain`, with level mass weights[l].
class MixedJoint {
 public:
  // `slice_integrals`, when given, are the integrals of the slices over the
  // domain computed by the caller (closed form, or a rule that copes with
  // the slice's endpoint behaviour); otherwise they are integrated here.
  static MixedJoint make(Axis discrete_axis, std::vector<double> levels, std::vector<double> weights,
                         std::vector<Fn1D> slice_densities, Interval domain,
                         std::vector<double> slice_integrals = {});

  Axis discrete_axis() const { return axis_; }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& weights() const { return weights_; }
  const Fn1D& slice_density(std::size_t level) const { return slices_[level]; }
  const Interval& domain() const { return domain_; }

  // Joint pf at (continuous value, level index).
  double joint_pf(double t, std::size_t level) const;
  // P(continuous <= t, discrete <= d) in the joint's own (x, y) orientation.
  double cdf(double x, double y) const;
  double continuous_cdf(double t) const;
  double discrete_cdf(double d) const;
  // Sum over levels of the slice integrals.
  double total_mass() const;

  // Declared positivity sets of the slices (one indicator per level). Without
  // them positivity is slice density > kPositivityEps, which fails where a
  // positive density underflows.
  MixedJoint with_slice_positivity(std::vector<Indicator1D> positivity) const;
  bool has_declared_positivity() const { return !positivity_.empty(); }
  bool positive(double t, std::size_t level) const;

 private:
  Axis axis_ = Axis::Y;
  std::vector<double> levels_;
  std::vector<double> weights_;
  std::vector<Fn1D> slices_;
  std::vector<double> slice_integrals_;
  std::vector<Indicator1D> positivity_;
  Interval domain_{};
};

// X ~ Beta(alpha, beta), Y | X ~ Bernoulli(X). Level masses and the
// normalising constant come from quadrature of x^(a+y-1) (1-x)^(b-y); both
// slices are declared positive on (0, 1). Throws NumericError when the
// quadrature underflows (very large parameters).
MixedJoint beta_bernoulli_joint(double alpha, double beta);

// ---------------------------------------------------------------------------
// Lebesgue mixtures and the Cantor CDF

struct LebesgueMixture {
  std::array<double, 3> weights{1.0, 0.0, 0.0};  // discrete, abs. continuous, singular
  std::optional<Fn1D> discrete;
  std::optional<Fn1D> continuous;
  std::optional<Fn1D> singular;
};

double mixture_cdf(const LebesgueMixture& m, double x);

struct Plateau {
  Interval span;
  double value = 0.0;
};

// Middle-thirds approximation of the Cantor function after `levels`
// construction steps: constant on the 2^levels - 1 removed intervals, linear
// with slope (3/2)^levels on the remaining 2^levels pieces, 0 left of 0 and 1
// right of 1.
class CantorCdf {
 public:
  explicit CantorCdf(int levels);

  int levels() const { return levels_; }
  double operator()(double x) const;
  // Removed intervals in increasing order.
  const std::vector<Plateau>& plateaus() const { return plateaus_; }
  // Breakpoints (x, F(x)) of the piecewise-linear graph on [0, 1].
  std::vector<Point2> polyline() const;

 private:
  int levels_;
  std::vector<Plateau> plateaus_;
};

Univariate cantor_distribution(int levels);

}  // namespace suppind
