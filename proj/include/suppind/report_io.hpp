#pragma once

// Serialisation of sets, reports and verdicts; mask exports; ingestion of
// joint PMF tables and sample files.

#include <Eigen/Core>
#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "suppind/dist_model.hpp"
#include "suppind/independence_check.hpp"
#include "suppind/set_model.hpp"
#include "suppind/support_engine.hpp"

namespace suppind {

using json = nlohmann::ordered_json;

// {intervals: [[lo, hi], ...], atoms: [...], unbounded: {left, right}, clip: {lo, hi}}
json to_json(const ClosedSet1D& set);
json to_json(const Region2D& region, std::size_t max_components = 4096);
json to_json(const SupportReport& report, std::string_view source);
json to_json(const Verdict& verdict, const std::optional<OracleReport>& oracle = std::nullopt);
json to_json(const ComparisonReport& report);

// Inverse of to_json(ClosedSet1D).
ClosedSet1D closed_set_from_json(const json& j);

// Binary PGM (P5): 255 for cells in the mask, 0 otherwise. The first image
// row is the highest y.
std::string to_pgm(const Region2D& region);
// Cell centers of mask and padding cells: "x,y,padding" with padding 0 or 1.
std::string to_mask_csv(const Region2D& region);

// Real number, optionally written as a fraction "a/b".
std::optional<double> parse_real(std::string_view text);

struct TableOptions {
  bool renormalize = false;
  double mass_tol = 1e-9;
};

// CSV rows "x,y,p" (an optional header row is skipped) or JSON
// {"atoms": [{"x":..,"y":..,"p":..} | [x, y, p], ...]}; masses may be
// fractions. Malformed text throws ParseError; duplicates throw
// InvalidInput; bad total mass throws InvalidDistribution.
DiscreteJoint parse_joint_csv(std::string_view text, TableOptions opt = {});
DiscreteJoint parse_joint_json(std::string_view text, TableOptions opt = {});
// Dispatches on the extension (.json, otherwise CSV).
DiscreteJoint read_joint_table(const std::filesystem::path& path, TableOptions opt = {});

// Rows "x,y" with an optional header.
Eigen::MatrixX2d parse_samples_csv(std::string_view text);
Eigen::MatrixX2d read_samples(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace suppind
