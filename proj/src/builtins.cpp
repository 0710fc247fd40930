#include "suppind/builtins.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "suppind/errors.hpp"

namespace suppind {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidInput(what + ": expected a number, got '" + s + "'");
  }
  return v;
}

void expect_args(const BuiltinCall& c, std::size_t max) {
  if (c.args.size() > max) {
    throw InvalidInput("builtin '" + c.name + "' takes at most " + std::to_string(max) + " argument(s)");
  }
}

std::string fmt(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

bool in_disk(double x, double y) { return x * x + y * y <= 1.0; }

double semicircle(double x) { return std::abs(x) <= 1.0 ? 2.0 * std::sqrt(1.0 - x * x) / kPi : 0.0; }

double colosseum_marginal(double t) {
  if (std::abs(t) > 1.0) return 0.0;
  const double s = std::sqrt(1.0 - t * t);
  return 2.0 / kPi * (2.0 * t * t * s + 2.0 * s * s * s / 3.0);
}

struct Shape {
  Fn1D f;
  double integral;  // over [0, 1]
};

Shape shape(std::string_view name) {
  if (name == "id") return {[](double t) { return t; }, 0.5};
  if (name == "sq") return {[](double t) { return t * t; }, 1.0 / 3.0};
  if (name == "exp") return {[](double t) { return std::exp(t); }, std::numbers::e - 1.0};
  if (name == "one-plus") return {[](double t) { return 1.0 + t; }, 1.5};
  throw InvalidInput("example7: unknown shape '" + std::string(name) + "' (id, sq, exp, one-plus)");
}

bool in_unit_square(double x, double y) { return 0.0 <= x && x <= 1.0 && 0.0 <= y && y <= 1.0; }

}  // namespace

BuiltinCall parse_builtin_call(std::string_view text) {
  BuiltinCall c;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    c.name = trim(text);
  } else {
    if (text.back() != ')') throw InvalidInput("builtin '" + std::string(text) + "': missing ')'");
    c.name = trim(text.substr(0, open));
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    while (!inner.empty()) {
      const auto comma = inner.find(',');
      c.args.push_back(trim(inner.substr(0, comma)));
      if (c.args.back().empty()) throw InvalidInput("builtin '" + std::string(text) + "': empty argument");
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
      if (inner.empty()) throw InvalidInput("builtin '" + std::string(text) + "': empty argument");
    }
  }
  if (c.name.empty()) throw InvalidInput("empty builtin name");
  return c;
}

std::vector<std::string> builtin_names() {
  return {"normal",        "uniform",   "exponential(eta)", "cantor(levels)",         "darts-uniform",
          "colosseum",     "example7(g,h)", "example9",     "beta-bernoulli(alpha,beta)", "product-normal",
          "example8-iid",  "example8-srs"};
}

ContinuousJoint darts_joint() {
  return ContinuousJoint::from_pdf([](double x, double y) { return in_disk(x, y) ? 1.0 / kPi : 0.0; }, in_disk,
                                   {-1.0, 1.0, -1.0, 1.0})
      .with_marginals(semicircle, semicircle);
}

ContinuousJoint colosseum_joint() {
  return ContinuousJoint::from_pdf(
             [](double x, double y) { return in_disk(x, y) ? 2.0 / kPi * (x * x + y * y) : 0.0; }, in_disk,
             {-1.0, 1.0, -1.0, 1.0})
      .with_marginals(colosseum_marginal, colosseum_marginal);
}

ContinuousJoint example7_joint(std::string_view g_name, std::string_view h_name) {
  const Shape g = shape(g_name);
  const Shape h = shape(h_name);
  const double c = 1.0 / (g.integral + h.integral);
  Fn2D pdf = [c, g = g.f, h = h.f](double x, double y) { return in_unit_square(x, y) ? c * (g(x) + h(y)) : 0.0; };
  Fn1D fx = [c, g = g.f, hi = h.integral](double x) { return 0.0 <= x && x <= 1.0 ? c * (g(x) + hi) : 0.0; };
  Fn1D fy = [c, h = h.f, gi = g.integral](double y) { return 0.0 <= y && y <= 1.0 ? c * (gi + h(y)) : 0.0; };
  return ContinuousJoint::from_pdf(std::move(pdf), in_unit_square, {0.0, 1.0, 0.0, 1.0})
      .with_marginals(std::move(fx), std::move(fy));
}

ContinuousJoint example9_joint(double clip) {
  if (!(clip > 1.0)) throw InvalidInput("example9: clip must exceed 1");
  const ContinuousJoint source = ContinuousJoint::from_pdf(
      [](double x1, double x2) { return in_unit_square(x1, x2) ? 4.0 * x1 * x2 : 0.0; }, in_unit_square,
      {0.0, 1.0, 0.0, 1.0});
  auto inverse = [](Point2 y) -> std::optional<Point2> {
    if (!(y.x > 0.0) || y.y < 0.0) return std::nullopt;
    return Point2{std::sqrt(y.x * y.y), std::sqrt(y.y / y.x)};
  };
  // f_Y1(t) = min(t, 1/t)^2 / t and f_Y2(u) = -4 u log u.
  Fn1D f1 = [](double t) {
    if (!(t > 0.0)) return 0.0;
    return t <= 1.0 ? t : 1.0 / (t * t * t);
  };
  Fn1D f2 = [](double u) { return u > 0.0 && u <= 1.0 ? -4.0 * u * std::log(u) : 0.0; };
  return pushforward(source, inverse, {0.0, clip, 0.0, 1.0})
      .with_marginals(std::move(f1), std::move(f2))
      .with_unbounded({false, true, false, false})
      .with_kinks({1.0}, {});
}

Sampler example9_sampler() {
  return [](std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixX2d out(static_cast<Eigen::Index>(n), 2);
    for (Eigen::Index k = 0; k < out.rows(); ++k) {
      // 1 - U lies in (0, 1], so X2 > 0.
      const double x1 = std::sqrt(1.0 - u(rng));
      const double x2 = std::sqrt(1.0 - u(rng));
      out(k, 0) = x1 / x2;
      out(k, 1) = x1 * x2;
    }
    return out;
  };
}

Sampler darts_sampler() {
  return [](std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixX2d out(static_cast<Eigen::Index>(n), 2);
    for (Eigen::Index k = 0; k < out.rows();) {
      const double x = u(rng);
      const double y = u(rng);
      if (!in_disk(x, y)) continue;
      out(k, 0) = x;
      out(k, 1) = y;
      ++k;
    }
    return out;
  };
}

DiscreteJoint iid_table() {
  std::vector<Atom2> atoms;
  for (double x : {4.0, 5.0, 7.0}) {
    for (double y : {4.0, 5.0, 7.0}) atoms.push_back({x, y, 1.0 / 9.0});
  }
  return DiscreteJoint::make(std::move(atoms));
}

DiscreteJoint srs_table() {
  std::vector<Atom2> atoms;
  for (double x : {4.0, 5.0, 7.0}) {
    for (double y : {4.0, 5.0, 7.0}) {
      if (x != y) atoms.push_back({x, y, 1.0 / 6.0});
    }
  }
  return DiscreteJoint::make(std::move(atoms));
}

ContinuousJoint product_normal_joint(double clip) {
  const Univariate n = normal_distribution(clip);
  return product_joint(n, n);
}

Builtin make_builtin(std::string_view text) {
  const BuiltinCall c = parse_builtin_call(text);
  auto num = [&](std::size_t k, double dflt) {
    return k < c.args.size() ? parse_number(c.args[k], c.name) : dflt;
  };
  Builtin b;
  b.name = c.name;
  if (c.name == "normal") {
    expect_args(c, 0);
    b.description = "standard Normal";
    b.model = normal_distribution();
  } else if (c.name == "uniform") {
    expect_args(c, 0);
    b.description = "Uniform(0, 1)";
    b.model = uniform_distribution();
  } else if (c.name == "exponential") {
    expect_args(c, 1);
    const double eta = num(0, 1.0);
    if (!(eta > 0.0)) throw InvalidInput("exponential: rate must be positive");
    b.name = "exponential(" + fmt(eta) + ")";
    b.description = "Exponential with rate " + fmt(eta);
    b.model = exponential_distribution(eta);
  } else if (c.name == "cantor") {
    expect_args(c, 1);
    const double levels = num(0, 10.0);
    if (levels != std::floor(levels) || levels < 1 || levels > 30) {
      throw InvalidInput("cantor: levels must be an integer in [1, 30]");
    }
    b.cantor_levels = static_cast<int>(levels);
    b.name = "cantor(" + std::to_string(b.cantor_levels) + ")";
    b.description = "middle-thirds Cantor CDF after " + std::to_string(b.cantor_levels) + " steps";
    b.model = cantor_distribution(b.cantor_levels);
  } else if (c.name == "darts-uniform" || c.name == "darts") {
    expect_args(c, 0);
    b.name = "darts-uniform";
    b.description = "Uniform on the closed unit disk";
    b.model = darts_joint();
    b.sampler = darts_sampler();
  } else if (c.name == "colosseum") {
    expect_args(c, 0);
    b.description = "density (2/pi)(x^2 + y^2) on the closed unit disk";
    b.model = colosseum_joint();
  } else if (c.name == "example7") {
    expect_args(c, 2);
    const std::string g = c.args.size() > 0 ? c.args[0] : "id";
    const std::string h = c.args.size() > 1 ? c.args[1] : g;
    b.name = "example7(" + g + "," + h + ")";
    b.description = "additive density c[g(x) + h(y)] on the unit square";
    b.model = example7_joint(g, h);
  } else if (c.name == "example9") {
    expect_args(c, 1);
    const double clip = num(0, 8.0);
    b.name = clip == 8.0 ? "example9" : "example9(" + fmt(clip) + ")";
    b.description = "(X1/X2, X1 X2) for X1, X2 iid with density 2x on [0,1]; y1 clipped at " + fmt(clip);
    b.model = example9_joint(clip);
    b.sampler = example9_sampler();
  } else if (c.name == "beta-bernoulli") {
    expect_args(c, 2);
    const double a = num(0, 1.0);
    const double be = num(1, 1.0);
    if (!(a > 0.0) || !(be > 0.0)) throw InvalidInput("beta-bernoulli: parameters must be positive");
    b.name = "beta-bernoulli(" + fmt(a) + "," + fmt(be) + ")";
    b.description = "X ~ Beta(alpha, beta), Y | X ~ Bernoulli(X)";
    b.model = beta_bernoulli_joint(a, be);
  } else if (c.name == "product-normal") {
    expect_args(c, 0);
    b.description = "two independent standard Normals";
    b.model = product_normal_joint();
  } else if (c.name == "example8-iid") {
    expect_args(c, 0);
    b.description = "two draws from {4,5,7} with replacement";
    b.model = iid_table();
  } else if (c.name == "example8-srs") {
    expect_args(c, 0);
    b.description = "two draws from {4,5,7} without replacement";
    b.model = srs_table();
  } else {
    std::string list;
    for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
    throw InvalidInput("unknown builtin '" + c.name + "'; known: " + list);
  }
  return b;
}

}  // namespace suppind
