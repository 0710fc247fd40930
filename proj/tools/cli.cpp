#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <variant>

#include "pipeline.hpp"
#include "suppind/errors.hpp"

namespace suppind::cli {

namespace {

struct Inputs {
  std::string builtin;
  std::string table;
  std::string samples;
  int grid = 512;
  int min_count = 1;
  double clip = 0.0;
  bool renormalize = false;
  std::string oracle = "auto";
  double tol_area = 0.0;
  double tol_dist = 0.0;
  double probe_tol = kDefaultProbeTol;
  unsigned long long seed = 42;
  std::string out;
  std::string example;
};

std::filesystem::path out_dir(const Inputs& in) {
  if (!in.out.empty()) return in.out;
  if (const char* env = std::getenv("SUPPIND_OUT"); env && *env) return env;
  return "suppind-out";
}

// Options that only some subcommands define count as not given elsewhere.
bool given(const CLI::App& cmd, const std::string& name) {
  const CLI::Option* o = cmd.get_option_no_throw(name);
  return o != nullptr && o->count() > 0;
}

void validate(const Inputs& in, const CLI::App& cmd) {
  const int sources = !in.builtin.empty() + !in.table.empty() + !in.samples.empty();
  if (sources != 1) throw InvalidInput("give exactly one of --builtin, --table, --samples");
  if (in.grid < 16) throw InvalidInput("--grid must be at least 16");
  if (in.min_count < 1) throw InvalidInput("--min-count must be at least 1");
  if (given(cmd, "--tol-area") && !(in.tol_area > 0)) throw InvalidInput("--tol-area must be positive");
  if (given(cmd, "--tol-dist") && !(in.tol_dist > 0)) throw InvalidInput("--tol-dist must be positive");
  if (!(in.probe_tol > 0)) throw InvalidInput("--probe-tol must be positive");
  if (given(cmd, "--clip") && !(in.clip > 0)) throw InvalidInput("--clip must be positive");
}

// --clip only applies to builtins with a clipped axis.
std::string builtin_text(const Inputs& in, const CLI::App& cmd) {
  if (!given(cmd, "--clip")) return in.builtin;
  const BuiltinCall c = parse_builtin_call(in.builtin);
  std::ostringstream os;
  os.precision(17);
  os << in.clip;
  if (c.name == "example9" && c.args.empty()) return "example9(" + os.str() + ")";
  if (c.name == "example9") throw InvalidInput("give the clip either as --clip or as example9(clip), not both");
  throw InvalidInput("--clip is only meaningful for example9");
}

CheckOptions check_options(const Inputs& in, const CLI::App& cmd) {
  CheckOptions o;
  if (given(cmd, "--tol-area")) o.tol_area = in.tol_area;
  if (given(cmd, "--tol-dist")) o.tol_dist = in.tol_dist;
  o.oracle = parse_oracle(in.oracle);
  o.probe_tol = in.probe_tol;
  o.seed = in.seed;
  return o;
}

void print_support(std::ostream& out, const SupportReport& rep, const std::filesystem::path& dir) {
  out << "method: " << to_string(rep.method) << "\n";
  out << "S_X components: " << rep.s_x.component_count() << ", S_Y components: " << rep.s_y.component_count()
      << "\n";
  out << "S_XY: " << rep.s_xy.cell_count() << " cells, area " << rep.s_xy.area() << "\n";
  for (const auto& n : rep.notes) out << "note: " << n << "\n";
  out << "wrote " << (dir / "support.json").string() << "\n";
}

int cmd_support(const Inputs& in, const CLI::App& cmd, std::ostream& out) {
  validate(in, cmd);
  const auto dir = out_dir(in);
  if (!in.samples.empty()) {
    const Eigen::MatrixX2d s = read_samples(in.samples);
    const SupportReport rep = support_report_empirical(s, Grid2D(sample_box(s), in.grid, in.grid), in.min_count);
    write_support_files(dir, rep, in.samples);
    print_support(out, rep, dir);
    return kOk;
  }
  if (!in.table.empty()) {
    const DiscreteJoint j = read_joint_table(in.table, {.renormalize = in.renormalize});
    const SupportReport rep = support_of(j);
    write_support_files(dir, rep, in.table);
    print_support(out, rep, dir);
    return kOk;
  }
  const Builtin b = make_builtin(builtin_text(in, cmd));
  if (const auto* u = std::get_if<Univariate>(&b.model)) {
    const int points = given(cmd, "--grid") ? in.grid + 1 : kDefaultLineGrid;
    write_text(dir / "support.json", dump(univariate_support_json(*u, b.name, points)));
    out << b.name << ": univariate support written to " << (dir / "support.json").string() << "\n";
    return kOk;
  }
  const SupportReport rep = std::visit(
      [&](const auto& m) -> SupportReport {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ContinuousJoint>) {
          return support_of(m, in.grid);
        } else if constexpr (std::is_same_v<T, Univariate>) {
          throw InvalidInput("unreachable");
        } else {
          return support_of(m);
        }
      },
      b.model);
  write_support_files(dir, rep, b.name);
  print_support(out, rep, dir);
  return kOk;
}

int cmd_check(const Inputs& in, const CLI::App& cmd, std::ostream& out) {
  validate(in, cmd);
  const auto dir = out_dir(in);
  const CheckOptions opt = check_options(in, cmd);
  CheckOutcome c;
  std::string source;
  if (!in.samples.empty()) {
    c = check_samples(read_samples(in.samples), in.grid, in.min_count, opt);
    source = in.samples;
  } else if (!in.table.empty()) {
    c = check(read_joint_table(in.table, {.renormalize = in.renormalize}), opt);
    source = in.table;
  } else {
    const Builtin b = make_builtin(builtin_text(in, cmd));
    source = b.name;
    c = std::visit(
        [&](const auto& m) -> CheckOutcome {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Univariate>) {
            throw InvalidInput("check needs a bivariate distribution; '" + b.name + "' is univariate");
          } else if constexpr (std::is_same_v<T, ContinuousJoint>) {
            return check(m, in.grid, opt);
          } else {
            return check(m, opt);
          }
        },
        b.model);
  }
  write_support_files(dir, c.support, source);
  write_verdict_file(dir, c);
  out << "screening: " << to_string(c.verdict.screening) << "\n";
  out << "oracle: " << (c.verdict.oracle ? to_string(*c.verdict.oracle) : "none") << "\n";
  out << "gap: " << c.verdict.gap << " (" << to_string(c.verdict.gap_kind) << ")\n";
  for (const auto& n : c.verdict.notes) out << "note: " << n << "\n";
  out << "wrote " << (dir / "verdict.json").string() << "\n";
  return kOk;
}

int cmd_example(const Inputs& in, const CLI::App& cmd, std::ostream& out) {
  if (in.grid < 16) throw InvalidInput("--grid must be at least 16");
  (void)cmd;
  ExampleOptions opt;
  opt.grid = in.grid;
  opt.seed = in.seed;
  opt.out_dir = out_dir(in);
  out << run_example(in.example, opt);
  out << "wrote " << (opt.out_dir / in.example).string() << "\n";
  return kOk;
}

int cmd_list(std::ostream& out) {
  out << "builtins:\n";
  for (const auto& n : builtin_names()) out << "  " << n << "\n";
  out << "examples:\n";
  for (const auto& e : example_registry()) out << "  " << e.name << "  " << e.description << "\n";
  return kOk;
}

void add_input_flags(CLI::App* c, Inputs& in) {
  c->add_option("--builtin", in.builtin, "named distribution, e.g. darts-uniform or example7(sq,exp)");
  c->add_option("--table", in.table, "joint PMF table (CSV x,y,p or JSON)");
  c->add_option("--samples", in.samples, "CSV of (x,y) samples");
  c->add_option("--grid", in.grid, "cells per axis")->capture_default_str();
  c->add_option("--min-count", in.min_count, "samples per cell for the empirical support")->capture_default_str();
  c->add_option("--clip", in.clip, "clip extent for unbounded axes (example9)");
  c->add_flag("--renormalize", in.renormalize, "rescale table masses that do not sum to 1");
  c->add_option("--out", in.out, "output directory (default $SUPPIND_OUT or ./suppind-out)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Support sets and the support-factorization screen for independence", "suppind"};
  app.require_subcommand(1);
  Inputs in;

  auto* support = app.add_subcommand("support", "compute S_X, S_Y and S_XY");
  add_input_flags(support, in);

  auto* chk = app.add_subcommand("check", "screen for dependence and run a factorization oracle");
  add_input_flags(chk, in);
  chk->add_option("--oracle", in.oracle, "auto, exact, probe, cdf or none")->capture_default_str();
  chk->add_option("--tol-area", in.tol_area, "area (or count) tolerance for the support comparison");
  chk->add_option("--tol-dist", in.tol_dist, "Hausdorff tolerance for the support comparison");
  chk->add_option("--probe-tol", in.probe_tol, "residual tolerance for probe oracles")->capture_default_str();
  chk->add_option("--seed", in.seed, "seed for random probes")->capture_default_str();

  auto* ex = app.add_subcommand("example", "reproduce a worked example");
  ex->add_option("name", in.example, "example name (see list)")->required();
  ex->add_option("--grid", in.grid, "cells per axis")->capture_default_str();
  ex->add_option("--seed", in.seed, "seed for Monte Carlo and random probes")->capture_default_str();
  ex->add_option("--out", in.out, "output directory (default $SUPPIND_OUT or ./suppind-out)");

  auto* list = app.add_subcommand("list", "list builtins and examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (support->parsed()) return cmd_support(in, *support, out);
    if (chk->parsed()) return cmd_check(in, *chk, out);
    if (ex->parsed()) return cmd_example(in, *ex, out);
    if (list->parsed()) return cmd_list(out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidDistribution& e) {
    err << "invalid distribution: " << e.what() << "\n";
    return kInvalidDistribution;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace suppind::cli
