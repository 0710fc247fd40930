#pragma once

// Support + screening + oracle runs shared by the subcommands and the
// example bundles.

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "suppind/builtins.hpp"
#include "suppind/independence_check.hpp"
#include "suppind/report_io.hpp"
#include "suppind/support_engine.hpp"

namespace suppind::cli {

enum class OracleChoice { Auto, Exact, Probe, Cdf, None };

OracleChoice parse_oracle(const std::string& s);

struct CheckOptions {
  std::optional<double> tol_area;
  std::optional<double> tol_dist;
  OracleChoice oracle = OracleChoice::Auto;
  double probe_tol = kDefaultProbeTol;
  std::uint64_t seed = 42;
  // Evaluated before the default probe set.
  std::vector<Point2> extra_probes;
};

struct CheckOutcome {
  SupportReport support;
  ScreeningResult screening;
  std::optional<OracleReport> oracle;
  Verdict verdict;
};

SupportReport support_of(const DiscreteJoint& j);
SupportReport support_of(const ContinuousJoint& j, int grid);
SupportReport support_of(const MixedJoint& j);

CheckOutcome check(const DiscreteJoint& j, const CheckOptions& opt);
CheckOutcome check(const ContinuousJoint& j, int grid, const CheckOptions& opt);
CheckOutcome check(const MixedJoint& j, const CheckOptions& opt);
CheckOutcome check_samples(const Eigen::MatrixX2d& samples, int grid, int min_count, const CheckOptions& opt);

// Support of a law on the line by three routes: canonical density on the
// grid, points of increase, and positive CDF increments.
json univariate_support_json(const Univariate& u, const std::string& source, int grid_points);

// support.json, mask.pgm, mask.csv and (when given) verdict.json.
void write_support_files(const std::filesystem::path& dir, const SupportReport& rep, const std::string& source);
void write_verdict_file(const std::filesystem::path& dir, const CheckOutcome& c);

std::string dump(const json& j);

}  // namespace suppind::cli
