#include "suppind/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "suppind/errors.hpp"

namespace suppind {

namespace {

// Non-finite values have no JSON spelling; they become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json box_json(const Box2D& b) { return json::array({b.x_lo, b.x_hi, b.y_lo, b.y_hi}); }

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Field {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto raw = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto first = raw.find_first_not_of(" \t");
    const std::size_t lead = first == std::string_view::npos ? 0 : first;
    out.push_back({strip(raw), static_cast<int>(start + lead + 1)});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Lines with their 1-based numbers, skipping blanks and '#' comments.
std::vector<std::pair<int, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int n = 0;
  while (!text.empty()) {
    ++n;
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    const auto s = strip(line);
    if (s.empty() || s.front() == '#') continue;
    out.emplace_back(n, line);
  }
  return out;
}

// Rows of `width` numeric fields. A first row whose fields are not all
// numeric is taken as a header.
std::vector<std::vector<double>> parse_numeric_csv(std::string_view text, std::size_t width, const char* what) {
  std::vector<std::vector<double>> rows;
  const auto lines = content_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto [line_no, line] = lines[k];
    const auto fields = split_fields(line);
    if (k == 0) {
      bool numeric = false;
      for (const auto& f : fields) numeric = numeric || parse_real(f.text).has_value();
      if (!numeric) continue;
    }
    if (fields.size() != width) {
      const int col = fields.size() > width ? fields[width].column : static_cast<int>(line.size()) + 1;
      throw ParseError(std::string(what) + ": expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no, col);
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      const auto v = parse_real(f.text);
      if (!v) throw ParseError(std::string(what) + ": not a number: '" + std::string(f.text) + "'", line_no, f.column);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DiscreteJoint joint_from_rows(const std::vector<Atom2>& atoms, TableOptions opt) {
  if (atoms.empty()) throw InvalidInput("joint table has no rows");
  return DiscreteJoint::make(atoms, {}, opt.mass_tol, opt.renormalize);
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double json_real(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (const auto r = parse_real(v.get<std::string>())) return *r;
  }
  throw InvalidInput(where + ": expected a number or fraction string");
}

}  // namespace

json to_json(const ClosedSet1D& set) {
  json iv = json::array();
  for (const auto& i : set.intervals()) iv.push_back(json::array({i.lo, i.hi}));
  json out;
  out["intervals"] = std::move(iv);
  out["atoms"] = set.atoms();
  out["unbounded"] = {{"left", set.unbounded_left()}, {"right", set.unbounded_right()}};
  out["clip"] = {{"lo", set.clip().lo}, {"hi", set.clip().hi}};
  return out;
}

ClosedSet1D closed_set_from_json(const json& j) {
  try {
    std::vector<RawInterval> iv;
    for (const auto& p : j.at("intervals")) iv.push_back(closed_interval(p.at(0).get<double>(), p.at(1).get<double>()));
    const auto atoms = j.at("atoms").get<std::vector<double>>();
    Clip clip{};
    if (j.contains("clip")) clip = {j["clip"].at("lo").get<double>(), j["clip"].at("hi").get<double>()};
    bool left = false;
    bool right = false;
    if (j.contains("unbounded")) {
      left = j["unbounded"].value("left", false);
      right = j["unbounded"].value("right", false);
    }
    return closure1d(iv, atoms, {}, clip).with_unbounded(left, right, clip);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("closed set JSON: ") + e.what());
  }
}

json to_json(const Region2D& region, std::size_t max_components) {
  const Grid2D& g = region.grid();
  json out;
  out["provenance"] = to_string(region.provenance());
  out["bbox"] = box_json(g.box());
  out["grid"] = {{"nx", g.nx()}, {"ny", g.ny()}, {"hx", g.hx()}, {"hy", g.hy()}};
  out["cells"] = region.cell_count();
  out["area"] = region.area();
  out["padding_cells"] = static_cast<std::size_t>((region.padding() != 0).count());
  out["exact"] = region.exact();
  if (region.exact() && region.components()->size() <= max_components) {
    json comps = json::array();
    for (const auto& r : *region.components()) comps.push_back(json::array({r.x_lo, r.x_hi, r.y_lo, r.y_hi}));
    out["components"] = std::move(comps);
  }
  return out;
}

json to_json(const SupportReport& rep, std::string_view source) {
  json out;
  out["kind"] = "support";
  out["source"] = std::string(source);
  out["method"] = to_string(rep.method);
  out["s_x"] = to_json(rep.s_x);
  out["s_y"] = to_json(rep.s_y);
  out["s_xy"] = to_json(rep.s_xy);
  out["amiable_x"] = rep.amiable_x ? json(to_string(*rep.amiable_x)) : json(nullptr);
  out["amiable_y"] = rep.amiable_y ? json(to_string(*rep.amiable_y)) : json(nullptr);
  if (rep.slice_axis) {
    out["slice_axis"] = *rep.slice_axis == Axis::X ? "x" : "y";
    json slices = json::array();
    for (const auto& s : rep.slices) slices.push_back({{"level", s.level}, {"set", to_json(s.set)}});
    out["slices"] = std::move(slices);
  }
  out["notes"] = rep.notes;
  return out;
}

json to_json(const ComparisonReport& r) {
  json w = json::array();
  for (std::size_t k = 0; k < r.witnesses.size(); ++k) {
    w.push_back({{"x", r.witnesses[k].x}, {"y", r.witnesses[k].y}, {"in_first", static_cast<bool>(r.witness_in_first[k])}});
  }
  json out;
  out["equal_within_tol"] = r.equal_within_tol;
  out["sym_diff_measure"] = num(r.sym_diff_measure);
  out["measure_kind"] = to_string(r.measure_kind);
  out["hausdorff"] = num(r.hausdorff);
  out["exact"] = r.exact;
  out["witnesses"] = std::move(w);
  return out;
}

json to_json(const Verdict& v, const std::optional<OracleReport>& oracle) {
  json w = json::array();
  for (const auto& x : v.witnesses) {
    w.push_back({{"x", num(x.x)}, {"y", num(x.y)}, {"lhs", num(x.lhs)}, {"rhs", num(x.rhs)}, {"source", x.source}});
  }
  json out;
  out["kind"] = "verdict";
  out["screening"] = to_string(v.screening);
  out["oracle"] = v.oracle ? json(to_string(*v.oracle)) : json(nullptr);
  out["gap"] = num(v.gap);
  out["gap_kind"] = to_string(v.gap_kind);
  out["hausdorff"] = num(v.hausdorff);
  if (oracle) out["oracle_detail"] = {{"max_residual", num(oracle->max_residual)}, {"probes", oracle->probes}};
  out["witnesses"] = std::move(w);
  out["notes"] = v.notes;
  return out;
}

std::string to_pgm(const Region2D& region) {
  const Grid2D& g = region.grid();
  std::string out = "P5\n" + std::to_string(g.nx()) + " " + std::to_string(g.ny()) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(g.nx()) * g.ny());
  for (int j = g.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx(); ++i) out.push_back(region.mask()(i, j) ? static_cast<char>(255) : '\0');
  }
  return out;
}

std::string to_mask_csv(const Region2D& region) {
  const Grid2D& g = region.grid();
  std::ostringstream os;
  os.precision(17);
  os << "x,y,padding\n";
  const bool has_padding = region.padding().size() == region.mask().size();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const bool in = region.mask()(i, j) != 0;
      const bool pad = has_padding && region.padding()(i, j) != 0;
      if (in || pad) os << g.x_center(i) << ',' << g.y_center(j) << ',' << (pad && !in ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

std::optional<double> parse_real(std::string_view text) {
  text = strip(text);
  auto one = [](std::string_view s) -> std::optional<double> {
    s = strip(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return one(text);
  const auto a = one(text.substr(0, slash));
  const auto b = one(text.substr(slash + 1));
  if (!a || !b || *b == 0.0) return std::nullopt;
  return *a / *b;
}

DiscreteJoint parse_joint_csv(std::string_view text, TableOptions opt) {
  std::vector<Atom2> atoms;
  for (const auto& r : parse_numeric_csv(text, 3, "joint table")) atoms.push_back({r[0], r[1], r[2]});
  return joint_from_rows(atoms, opt);
}

DiscreteJoint parse_joint_json(std::string_view text, TableOptions opt) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("joint table JSON is malformed", line, col);
  }
  const json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("atoms")) throw InvalidInput("joint table JSON: missing \"atoms\"");
    rows = &j["atoms"];
  }
  if (!rows->is_array()) throw InvalidInput("joint table JSON: \"atoms\" must be an array");
  std::vector<Atom2> atoms;
  for (std::size_t k = 0; k < rows->size(); ++k) {
    const json& r = (*rows)[k];
    const std::string where = "atoms[" + std::to_string(k) + "]";
    if (r.is_array()) {
      if (r.size() != 3) throw InvalidInput(where + ": expected [x, y, p]");
      atoms.push_back({json_real(r[0], where), json_real(r[1], where), json_real(r[2], where)});
    } else if (r.is_object()) {
      if (!r.contains("x") || !r.contains("y") || !r.contains("p")) throw InvalidInput(where + ": needs x, y and p");
      atoms.push_back({json_real(r["x"], where), json_real(r["y"], where), json_real(r["p"], where)});
    } else {
      throw InvalidInput(where + ": expected an object or an array");
    }
  }
  return joint_from_rows(atoms, opt);
}

DiscreteJoint read_joint_table(const std::filesystem::path& path, TableOptions opt) {
  const std::string text = read_text(path);
  return path.extension() == ".json" ? parse_joint_json(text, opt) : parse_joint_csv(text, opt);
}

Eigen::MatrixX2d parse_samples_csv(std::string_view text) {
  const auto rows = parse_numeric_csv(text, 2, "samples");
  if (rows.empty()) throw InvalidInput("sample file has no rows");
  Eigen::MatrixX2d out(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out(static_cast<Eigen::Index>(k), 0) = rows[k][0];
    out(static_cast<Eigen::Index>(k), 1) = rows[k][1];
  }
  return out;
}

Eigen::MatrixX2d read_samples(const std::filesystem::path& path) { return parse_samples_csv(read_text(path)); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace suppind
