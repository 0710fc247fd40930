#include "suppind/dist_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "suppind/errors.hpp"
#include "suppind/quadrature.hpp"

namespace suppind {

namespace {

long double sum_mass(const auto& atoms) {
  long double s = 0.0L;
  for (const auto& a : atoms) s += a.p;
  return s;
}

void check_mass_value(double p) {
  if (!std::isfinite(p)) throw InvalidDistribution("probability mass is not finite");
  if (p < 0) throw InvalidDistribution("negative probability mass");
}

}  // namespace

// ---------------------------------------------------------------------------
// MarginalPMF

MarginalPMF MarginalPMF::make(std::vector<Atom1> atoms, std::vector<double> declared_limit_points,
                              double truncation_mass, double mass_tol) {
  MarginalPMF m;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.x)) throw InvalidInput("atom location is not finite");
    check_mass_value(a.p);
    if (a.p > 0) m.atoms_.push_back(a);
  }
  std::sort(m.atoms_.begin(), m.atoms_.end(), [](const Atom1& a, const Atom1& b) { return a.x < b.x; });
  for (std::size_t k = 1; k < m.atoms_.size(); ++k) {
    if (m.atoms_[k].x == m.atoms_[k - 1].x) {
      throw InvalidInput("duplicate atom at x = " + std::to_string(m.atoms_[k].x));
    }
  }
  const long double mass = sum_mass(m.atoms_);
  if (std::abs(static_cast<double>(mass - 1.0L)) > mass_tol + truncation_mass) {
    throw InvalidDistribution("PMF mass " + std::to_string(static_cast<double>(mass)) + " != 1");
  }
  std::sort(declared_limit_points.begin(), declared_limit_points.end());
  declared_limit_points.erase(std::unique(declared_limit_points.begin(), declared_limit_points.end()),
                              declared_limit_points.end());
  m.limit_points_ = std::move(declared_limit_points);
  m.truncation_mass_ = truncation_mass;
  return m;
}

std::vector<double> MarginalPMF::values() const {
  std::vector<double> v;
  v.reserve(atoms_.size());
  for (const auto& a : atoms_) v.push_back(a.x);
  return v;
}

double MarginalPMF::mass() const { return static_cast<double>(sum_mass(atoms_)); }

double MarginalPMF::pmf(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x, [](const Atom1& a, double v) { return a.x < v; });
  return (it != atoms_.end() && it->x == x) ? it->p : 0.0;
}

double MarginalPMF::cdf(double x) const {
  long double s = 0.0L;
  for (const auto& a : atoms_) {
    if (a.x > x) break;
    s += a.p;
  }
  return static_cast<double>(std::min(s, 1.0L));
}

// ---------------------------------------------------------------------------
// DiscreteJoint

DiscreteJoint DiscreteJoint::make(std::vector<Atom2> atoms, std::vector<Point2> declared_limit_points,
                                  double mass_tol, bool renormalize) {
  DiscreteJoint j;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw InvalidInput("atom coordinate is not finite");
    check_mass_value(a.p);
    if (a.p > 0) j.atoms_.push_back(a);
  }
  if (j.atoms_.empty()) throw InvalidDistribution("joint PMF has no positive mass");
  std::sort(j.atoms_.begin(), j.atoms_.end(),
            [](const Atom2& a, const Atom2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  for (std::size_t k = 1; k < j.atoms_.size(); ++k) {
    if (j.atoms_[k].x == j.atoms_[k - 1].x && j.atoms_[k].y == j.atoms_[k - 1].y) {
      throw InvalidInput("duplicate atom (" + std::to_string(j.atoms_[k].x) + ", " +
                         std::to_string(j.atoms_[k].y) + ")");
    }
  }
  const long double mass = sum_mass(j.atoms_);
  if (std::abs(static_cast<double>(mass - 1.0L)) > mass_tol) {
    if (!renormalize) {
      throw InvalidDistribution("joint PMF mass " + std::to_string(static_cast<double>(mass)) + " != 1");
    }
    for (auto& a : j.atoms_) a.p = static_cast<double>(a.p / mass);
    j.renormalized_ = true;
  }
  j.limit_points_ = std::move(declared_limit_points);
  return j;
}

double DiscreteJoint::pmf(double x, double y) const {
  for (const auto& a : atoms_) {
    if (a.x == x && a.y == y) return a.p;
  }
  return 0.0;
}

double DiscreteJoint::cdf(double x, double y) const {
  long double s = 0.0L;
  for (const auto& a : atoms_) {
    if (a.x <= x && a.y <= y) s += a.p;
  }
  return static_cast<double>(s);
}

Box2D DiscreteJoint::bounding_box() const {
  Box2D b{kInf, -kInf, kInf, -kInf};
  auto grow = [&b](double x, double y) {
    b.x_lo = std::min(b.x_lo, x);
    b.x_hi = std::max(b.x_hi, x);
    b.y_lo = std::min(b.y_lo, y);
    b.y_hi = std::max(b.y_hi, y);
  };
  for (const auto& a : atoms_) grow(a.x, a.y);
  for (const auto& p : limit_points_) grow(p.x, p.y);
  return b;
}

std::pair<MarginalPMF, MarginalPMF> marginals(const DiscreteJoint& joint) {
  std::map<double, long double> px;
  std::map<double, long double> py;
  for (const auto& a : joint.atoms()) {
    px[a.x] += a.p;
    py[a.y] += a.p;
  }
  auto build = [](const std::map<double, long double>& m, std::vector<double> limits) {
    std::vector<Atom1> atoms;
    for (const auto& [x, p] : m) atoms.push_back({x, static_cast<double>(p)});
    // The joint was validated already; this is bookkeeping, not a check.
    return MarginalPMF::make(std::move(atoms), std::move(limits), 0.0, 1e-6);
  };
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& p : joint.declared_limit_points()) {
    lx.push_back(p.x);
    ly.push_back(p.y);
  }
  return {build(px, std::move(lx)), build(py, std::move(ly))};
}

DiscreteJoint outer_product(const MarginalPMF& px, const MarginalPMF& py) {
  std::vector<Atom2> atoms;
  atoms.reserve(px.atoms().size() * py.atoms().size());
  for (const auto& a : px.atoms()) {
    for (const auto& b : py.atoms()) atoms.push_back({a.x, b.x, a.p * b.p});
  }
  return DiscreteJoint::make(std::move(atoms), {}, 1e-9);
}

MarginalPMF truncated_pmf(const std::function<Atom1(std::size_t)>& term, double tail_tol,
                          std::size_t max_terms, std::vector<double> declared_limit_points) {
  std::vector<Atom1> atoms;
  long double total = 0.0L;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const Atom1 a = term(n);
    total += a.p;
    if (a.p > 0) atoms.push_back(a);
    if (1.0L - total < tail_tol) break;
  }
  const double tail = std::max(0.0, static_cast<double>(1.0L - total));
  return MarginalPMF::make(std::move(atoms), std::move(declared_limit_points), tail);
}

MarginalPMF poisson_pmf(double eta) {
  if (!(eta > 0)) throw InvalidInput("Poisson rate must be positive");
  return truncated_pmf([eta](std::size_t n) {
    const double k = static_cast<double>(n);
    return Atom1{k, std::exp(k * std::log(eta) - eta - std::lgamma(k + 1.0))};
  });
}

MarginalPMF geometric_pmf(double p) {
  if (!(p > 0 && p <= 1)) throw InvalidInput("geometric parameter must lie in (0, 1]");
  return truncated_pmf([p](std::size_t n) {
    return Atom1{static_cast<double>(n), p * std::pow(1.0 - p, static_cast<double>(n))};
  });
}

MarginalPMF binomial_pmf(int n, double p) {
  if (n < 0 || !(p >= 0 && p <= 1)) throw InvalidInput("invalid binomial parameters");
  std::vector<Atom1> atoms;
  for (int k = 0; k <= n; ++k) {
    const double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    const double pk = std::exp(logc) * std::pow(p, k) * std::pow(1.0 - p, n - k);
    atoms.push_back({static_cast<double>(k), pk});
  }
  return MarginalPMF::make(std::move(atoms));
}

MarginalPMF halving_pmf(std::size_t terms, bool declare_limit_point) {
  if (terms == 0 || terms > 1000) throw InvalidInput("halving PMF needs 1..1000 terms");
  std::vector<Atom1> atoms;
  double x = 1.0;
  for (std::size_t n = 0; n < terms; ++n) {
    x *= 0.5;
    atoms.push_back({x, x});
  }
  std::vector<double> limits;
  if (declare_limit_point) limits.push_back(0.0);
  return MarginalPMF::make(std::move(atoms), std::move(limits), x);
}

// ---------------------------------------------------------------------------
// Canonical densities

double canonical_pdf_1d(const Fn1D& cdf, double x, DerivativeOptions opt) {
  const double h = opt.step > 0 ? opt.step : kDefaultStep1D;
  const double fm = cdf(x - h);
  const double f0 = cdf(x);
  const double fp = cdf(x + h);
  if (fp < f0 - 1e-12 || f0 < fm - 1e-12) {
    throw InvalidDistribution("CDF decreases near x = " + std::to_string(x));
  }
  const double left = (f0 - fm) / h;
  const double right = (fp - f0) / h;
  const double scale = std::max(std::abs(left), std::abs(right));
  if (std::abs(left - right) > opt.kink_tol * scale + 1e-8) return 0.0;
  return std::max(0.0, (fp - fm) / (2.0 * h));
}

double canonical_pdf_2d(const Fn2D& cdf, double x, double y, DerivativeOptions opt) {
  const double h = opt.step > 0 ? opt.step : kDefaultStep2D;
  double f[3][3];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) f[a][b] = cdf(x + (a - 1) * h, y + (b - 1) * h);
  }
  // Mass of the four h-by-h cells around (x, y), scaled by 1/h^2.
  double q[4];
  int k = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double mass = f[a + 1][b + 1] - f[a + 1][b] - f[a][b + 1] + f[a][b];
      if (mass < -1e-12) throw InvalidDistribution("joint CDF assigns negative mass near the probe");
      q[k++] = mass / (h * h);
    }
  }
  const auto [lo, hi] = std::minmax_element(q, q + 4);
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo > opt.kink_tol * scale + 1e-6) return 0.0;
  return std::max(0.0, (f[2][2] - f[2][0] - f[0][2] + f[0][0]) / (4.0 * h * h));
}

Fn1D canonical_density(Fn1D cdf, DerivativeOptions opt) {
  return [cdf = std::move(cdf), opt](double x) { return canonical_pdf_1d(cdf, x, opt); };
}

// ---------------------------------------------------------------------------
// Univariate

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

Univariate normal_distribution(double clip) {
  if (!(clip > 0)) throw InvalidInput("clip must be positive");
  return {normal_cdf, Fn1D(normal_pdf), {-clip, clip}, true, true};
}

Univariate uniform_distribution(double lo, double hi) {
  if (!(lo < hi)) throw InvalidInput("uniform needs lo < hi");
  Fn1D cdf = [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
  Fn1D pdf = [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 / (hi - lo) : 0.0; };
  return {cdf, pdf, {lo, hi}, false, false};
}

Univariate exponential_distribution(double eta, double clip) {
  if (!(eta > 0)) throw InvalidInput("exponential rate must be positive");
  if (!(clip > 0)) throw InvalidInput("clip must be positive");
  Fn1D cdf = [eta](double x) { return x <= 0 ? 0.0 : -std::expm1(-eta * x); };
  Fn1D pdf = [eta](double x) { return x <= 0 ? 0.0 : eta * std::exp(-eta * x); };
  return {cdf, pdf, {-1.0, clip}, false, true};
}

Univariate point_mass(double at) {
  Fn1D cdf = [at](double x) { return x >= at ? 1.0 : 0.0; };
  return {cdf, std::nullopt, {at - 1.0, at + 1.0}, false, false};
}

Univariate discrete_distribution(const MarginalPMF& pmf) {
  if (pmf.atoms().empty()) throw InvalidDistribution("empty PMF");
  Fn1D cdf = [pmf](double x) { return pmf.cdf(x); };
  return {cdf, std::nullopt, {pmf.atoms().front().x - 1.0, pmf.atoms().back().x + 1.0}, false, false};
}

// ---------------------------------------------------------------------------
// ContinuousJoint

ContinuousJoint ContinuousJoint::from_cdf(Fn2D cdf, Box2D box, Indicator2D positivity) {
  constexpr int kProbe = 33;
  for (int a = 0; a < kProbe; ++a) {
    const double x = box.x_lo + box.width() * a / (kProbe - 1);
    double prev_y = -kInf;
    for (int b = 0; b < kProbe; ++b) {
      const double y = box.y_lo + box.height() * b / (kProbe - 1);
      const double v = cdf(x, y);
      if (!std::isfinite(v) || v < -1e-12 || v > 1 + 1e-12) {
        throw InvalidDistribution("joint CDF value outside [0, 1]");
      }
      if (v < prev_y - 1e-12) throw InvalidDistribution("joint CDF decreases in y");
      if (a > 0) {
        const double left = cdf(box.x_lo + box.width() * (a - 1) / (kProbe - 1), y);
        if (v < left - 1e-12) throw InvalidDistribution("joint CDF decreases in x");
      }
      prev_y = v;
    }
  }
  if (std::abs(cdf(box.x_hi, box.y_hi) - 1.0) > 1e-6) {
    throw InvalidDistribution("joint CDF at the upper box corner is not 1");
  }
  ContinuousJoint j;
  j.mode_ = Mode::CdfBacked;
  j.cdf_ = std::move(cdf);
  j.positivity_ = std::move(positivity);
  j.box_ = box;
  return j;
}

ContinuousJoint ContinuousJoint::from_pdf(Fn2D pdf, Indicator2D positivity, Box2D box, bool force_threshold) {
  if (!positivity && !force_threshold) {
    throw InvalidInput("pdf-backed joint needs a declared positivity indicator");
  }
  ContinuousJoint j;
  j.mode_ = Mode::PdfBacked;
  j.pdf_ = std::move(pdf);
  j.positivity_ = std::move(positivity);
  j.box_ = box;
  return j;
}

double ContinuousJoint::density(double x, double y) const {
  if (pdf_) {
    const double v = (*pdf_)(x, y);
    if (!std::isfinite(v) || v < 0) throw InvalidDistribution("density is negative or not finite");
    return v;
  }
  return canonical_pdf_2d(*cdf_, x, y);
}

bool ContinuousJoint::positive(double x, double y) const {
  if (positivity_) return positivity_(x, y);
  return density(x, y) > kPositivityEps;
}

double ContinuousJoint::marginal_x(double x) const {
  if (marginal_x_) return (*marginal_x_)(x);
  if (mode_ == Mode::CdfBacked) {
    const double top = box_.y_hi;
    return canonical_pdf_1d([this, top](double t) { return (*cdf_)(t, top); }, x);
  }
  return simpson([this, x](double y) { return density(x, y); }, box_.y_lo, box_.y_hi);
}

double ContinuousJoint::marginal_y(double y) const {
  if (marginal_y_) return (*marginal_y_)(y);
  if (mode_ == Mode::CdfBacked) {
    const double right = box_.x_hi;
    return canonical_pdf_1d([this, right](double t) { return (*cdf_)(right, t); }, y);
  }
  return simpson([this, y](double x) { return density(x, y); }, box_.x_lo, box_.x_hi);
}

ContinuousJoint ContinuousJoint::with_marginals(Fn1D fx, Fn1D fy) const {
  ContinuousJoint j = *this;
  j.marginal_x_ = std::move(fx);
  j.marginal_y_ = std::move(fy);
  return j;
}

ContinuousJoint ContinuousJoint::with_cdf(Fn2D cdf) const {
  ContinuousJoint j = *this;
  j.cdf_ = std::move(cdf);
  return j;
}

ContinuousJoint ContinuousJoint::with_unbounded(UnboundedSides sides) const {
  ContinuousJoint j = *this;
  j.unbounded_ = sides;
  return j;
}

ContinuousJoint ContinuousJoint::with_kinks(std::vector<double> x_kinks, std::vector<double> y_kinks) const {
  ContinuousJoint j = *this;
  j.x_kinks_ = std::move(x_kinks);
  j.y_kinks_ = std::move(y_kinks);
  return j;
}

ContinuousJoint product_joint(const Univariate& ux, const Univariate& uy) {
  const Box2D box{ux.window.lo, ux.window.hi, uy.window.lo, uy.window.hi};
  Fn2D cdf = [fx = ux.cdf, fy = uy.cdf](double x, double y) { return fx(x) * fy(y); };
  ContinuousJoint j;
  Fn1D mx;
  Fn1D my;
  if (ux.pdf && uy.pdf) {
    Fn2D pdf = [px = *ux.pdf, py = *uy.pdf](double x, double y) { return px(x) * py(y); };
    j = ContinuousJoint::from_pdf(pdf, {}, box, true);
    mx = *ux.pdf;
    my = *uy.pdf;
  } else {
    j = ContinuousJoint::from_cdf(cdf, box);
    mx = canonical_density(ux.cdf);
    my = canonical_density(uy.cdf);
  }
  return j.with_cdf(std::move(cdf))
      .with_marginals(std::move(mx), std::move(my))
      .with_unbounded({ux.unbounded_left, ux.unbounded_right, uy.unbounded_left, uy.unbounded_right});
}

namespace {

// Partial derivative of one output coordinate of `inv` with respect to one
// input coordinate; central where defined, else one-sided.
std::optional<Point2> partial(const std::function<std::optional<Point2>(Point2)>& inv, Point2 y, bool wrt_x) {
  const double base = wrt_x ? y.x : y.y;
  const double d = 1e-6 * std::max(1.0, std::abs(base));
  auto shifted = [&](double s) {
    Point2 p = y;
    (wrt_x ? p.x : p.y) += s;
    return inv(p);
  };
  const auto plus = shifted(d);
  const auto minus = shifted(-d);
  if (plus && minus) return Point2{(plus->x - minus->x) / (2 * d), (plus->y - minus->y) / (2 * d)};
  const auto mid = inv(y);
  if (!mid) return std::nullopt;
  if (plus) return Point2{(plus->x - mid->x) / d, (plus->y - mid->y) / d};
  if (minus) return Point2{(mid->x - minus->x) / d, (mid->y - minus->y) / d};
  return std::nullopt;
}

}  // namespace

ContinuousJoint pushforward(const ContinuousJoint& source,
                            std::function<std::optional<Point2>(Point2)> inverse, Box2D target_box) {
  Fn2D pdf = [source, inverse](double y1, double y2) {
    const Point2 y{y1, y2};
    const auto x = inverse(y);
    if (!x || !source.positive(x->x, x->y)) return 0.0;
    const auto dx = partial(inverse, y, true);
    const auto dy = partial(inverse, y, false);
    if (!dx || !dy) return 0.0;
    const double det = dx->x * dy->y - dx->y * dy->x;
    return source.density(x->x, x->y) * std::abs(det);
  };
  Indicator2D positivity = [source, inverse](double y1, double y2) {
    const auto x = inverse({y1, y2});
    return x && source.positive(x->x, x->y);
  };
  return ContinuousJoint::from_pdf(std::move(pdf), std::move(positivity), target_box);
}

// ---------------------------------------------------------------------------
// MixedJoint

MixedJoint MixedJoint::make(Axis discrete_axis, std::vector<double> levels, std::vector<double> weights,
                            std::vector<Fn1D> slice_densities, Interval domain,
                            std::vector<double> slice_integrals) {
  if (levels.empty() || levels.size() != weights.size() || levels.size() != slice_densities.size()) {
    throw InvalidInput("mixed joint needs matching levels, weights and slices");
  }
  if (!(domain.lo < domain.hi)) throw InvalidInput("mixed joint domain must have lo < hi");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    check_mass_value(weights[k]);
    if (k > 0 && !(levels[k - 1] < levels[k])) throw InvalidInput("levels must be strictly increasing");
  }
  MixedJoint m;
  m.axis_ = discrete_axis;
  m.levels_ = std::move(levels);
  m.weights_ = std::move(weights);
  m.slices_ = std::move(slice_densities);
  m.domain_ = domain;
  if (slice_integrals.empty()) {
    for (const auto& f : m.slices_) slice_integrals.push_back(integrate(f, domain.lo, domain.hi));
  } else if (slice_integrals.size() != m.levels_.size()) {
    throw InvalidInput("mixed joint needs one slice integral per level");
  }
  m.slice_integrals_ = std::move(slice_integrals);
  const double total = m.total_mass();
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidDistribution("mixed joint mass " + std::to_string(total) + " != 1");
  }
  return m;
}

double MixedJoint::joint_pf(double t, std::size_t level) const {
  if (t < domain_.lo || t > domain_.hi) return 0.0;
  return weights_.at(level) * slices_.at(level)(t);
}

double MixedJoint::continuous_cdf(double t) const {
  if (t <= domain_.lo) return 0.0;
  const double upper = std::min(t, domain_.hi);
  double s = 0.0;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (weights_[k] > 0) s += weights_[k] * integrate(slices_[k], domain_.lo, upper);
  }
  return s;
}

double MixedJoint::discrete_cdf(double d) const {
  double s = 0.0;
  for (std::size_t k = 0; k < levels_.size() && levels_[k] <= d; ++k) s += weights_[k];
  return s;
}

double MixedJoint::cdf(double x, double y) const {
  const double t = axis_ == Axis::Y ? x : y;
  const double d = axis_ == Axis::Y ? y : x;
  if (t <= domain_.lo) return 0.0;
  const double upper = std::min(t, domain_.hi);
  double s = 0.0;
  for (std::size_t k = 0; k < levels_.size() && levels_[k] <= d; ++k) {
    if (weights_[k] > 0) s += weights_[k] * integrate(slices_[k], domain_.lo, upper);
  }
  return s;
}

MixedJoint MixedJoint::with_slice_positivity(std::vector<Indicator1D> positivity) const {
  if (positivity.size() != levels_.size()) throw InvalidInput("mixed joint needs one positivity indicator per level");
  MixedJoint out = *this;
  out.positivity_ = std::move(positivity);
  return out;
}

bool MixedJoint::positive(double t, std::size_t level) const {
  if (t < domain_.lo || t > domain_.hi || weights_.at(level) <= 0) return false;
  if (!positivity_.empty()) return positivity_[level](t);
  return slices_[level](t) > kPositivityEps;
}

double MixedJoint::total_mass() const {
  double s = 0.0;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    s += weights_[k] * slice_integrals_[k];
  }
  return s;
}

MixedJoint beta_bernoulli_joint(double alpha, double beta) {
  if (!(alpha > 0) || !(beta > 0)) throw InvalidInput("beta-Bernoulli parameters must be positive");
  auto unnormalized = [alpha, beta](int y) {
    return [alpha, beta, y](double x) { return std::pow(x, alpha + y - 1.0) * std::pow(1.0 - x, beta - y); };
  };
  auto mass = [alpha, beta](int y) {
    return integrate_unit([alpha, beta, y](double x, double one_minus_x) {
      return std::pow(x, alpha + y - 1.0) * std::pow(one_minus_x, beta - y);
    });
  };
  const double m0 = mass(0);
  const double m1 = mass(1);
  if (!(m0 > 0 && m1 > 0 && std::isfinite(m0) && std::isfinite(m1))) {
    throw NumericError("beta-Bernoulli normalising integrals under- or overflow in double precision");
  }
  const double c = 1.0 / (m0 + m1);
  std::vector<Fn1D> slices;
  slices.push_back([u = unnormalized(0), m0](double x) { return u(x) / m0; });
  slices.push_back([u = unnormalized(1), m1](double x) { return u(x) / m1; });
  auto open_unit = [](double x) { return x > 0.0 && x < 1.0; };
  return MixedJoint::make(Axis::Y, {0.0, 1.0}, {c * m0, c * m1}, std::move(slices), {0.0, 1.0}, {1.0, 1.0})
      .with_slice_positivity({open_unit, open_unit});
}

// ---------------------------------------------------------------------------
// Mixtures and Cantor

double mixture_cdf(const LebesgueMixture& m, double x) {
  double total = 0.0;
  for (double w : m.weights) {
    if (!(w >= 0 && w <= 1)) throw InvalidDistribution("mixture weight outside [0, 1]");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidDistribution("mixture weights do not sum to 1");
  const std::optional<Fn1D>* parts[3] = {&m.discrete, &m.continuous, &m.singular};
  double v = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (m.weights[k] == 0) continue;
    if (!parts[k]->has_value()) throw InvalidInput("mixture part with positive weight is missing");
    v += m.weights[k] * (**parts[k])(x);
  }
  return v;
}

namespace {

void collect_plateaus(double a, double b, double vlo, double vhi, int depth, std::vector<Plateau>& out) {
  if (depth == 0) return;
  const double third = (b - a) / 3.0;
  const double mid = 0.5 * (vlo + vhi);
  collect_plateaus(a, a + third, vlo, mid, depth - 1, out);
  out.push_back({{a + third, b - third}, mid});
  collect_plateaus(b - third, b, mid, vhi, depth - 1, out);
}

constexpr int kMaxMaterializedLevels = 20;

}  // namespace

CantorCdf::CantorCdf(int levels) : levels_(levels) {
  if (levels < 1 || levels > 30) throw InvalidInput("Cantor levels must lie in 1..30");
  if (levels <= kMaxMaterializedLevels) {
    plateaus_.reserve((std::size_t{1} << levels) - 1);
    collect_plateaus(0.0, 1.0, 0.0, 1.0, levels, plateaus_);
  }
}

double CantorCdf::operator()(double x) const {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  double value = 0.0;
  double scale = 1.0;
  for (int k = 0; k < levels_; ++k) {
    const double t = 3.0 * x;
    scale *= 0.5;
    if (t <= 1.0) {
      x = t;
    } else if (t < 2.0) {
      return value + scale;
    } else {
      value += scale;
      x = t - 2.0;
    }
  }
  return value + scale * x;
}

std::vector<Point2> CantorCdf::polyline() const {
  if (levels_ > kMaxMaterializedLevels) throw InvalidInput("polyline is limited to 20 levels");
  std::vector<Point2> pts;
  pts.reserve(2 * plateaus_.size() + 2);
  pts.push_back({0.0, 0.0});
  for (const auto& p : plateaus_) {
    pts.push_back({p.span.lo, p.value});
    pts.push_back({p.span.hi, p.value});
  }
  pts.push_back({1.0, 1.0});
  return pts;
}

Univariate cantor_distribution(int levels) {
  const CantorCdf f(levels);
  return {[f](double x) { return f(x); }, std::nullopt, {0.0, 1.0}, false, false};
}

}  // namespace suppind
