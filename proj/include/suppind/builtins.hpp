#pragma once

// Named distributions: the worked examples plus a few textbook laws.
//
// Names may carry arguments in parentheses, e.g. "exponential(2)",
// "example7(sq,exp)" or "beta-bernoulli(2,1)".

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "suppind/dist_model.hpp"

namespace suppind {

using Model = std::variant<Univariate, ContinuousJoint, MixedJoint, DiscreteJoint>;

// n draws of (X, Y) from a generator seeded with `seed`.
using Sampler = std::function<Eigen::MatrixX2d(std::size_t n, std::uint64_t seed)>;

struct Builtin {
  std::string name;  // with resolved arguments
  std::string description;
  Model model;
  Sampler sampler;  // empty when no sampler is wired up
  // Cantor only: the construction behind the univariate CDF.
  int cantor_levels = 0;
};

struct BuiltinCall {
  std::string name;
  std::vector<std::string> args;
};

// Splits "name(a,b)" into its parts. Throws InvalidInput on malformed text.
BuiltinCall parse_builtin_call(std::string_view text);

// Throws InvalidInput for unknown names or bad arguments.
Builtin make_builtin(std::string_view text);

// Registry names with argument hints, for help text.
std::vector<std::string> builtin_names();

// ---------------------------------------------------------------------------
// Individual builders

// Uniform on the closed unit disk; box [-1,1]^2, semicircle marginals.
ContinuousJoint darts_joint();
// (2/pi)(x^2 + y^2) on the unit disk.
ContinuousJoint colosseum_joint();

// Additive density c [g(x) + h(y)] on the unit square. Shapes: "id" (t),
// "sq" (t^2), "exp" (e^t), "one-plus" (1 + t).
ContinuousJoint example7_joint(std::string_view g = "id", std::string_view h = "id");

// (X1, X2) with density 4 x1 x2 on [0,1]^2 pushed through
// (y1, y2) = (x1 / x2, x1 x2). The y1 axis is clipped at `clip`.
ContinuousJoint example9_joint(double clip = 8.0);
Sampler example9_sampler();
Sampler darts_sampler();

// Two draws from {4, 5, 7}, with and without replacement.
DiscreteJoint iid_table();
DiscreteJoint srs_table();

ContinuousJoint product_normal_joint(double clip = 6.0);

}  // namespace suppind
