#include "otsuki/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "otsuki/errors.hpp"
#include "otsuki/geometry.hpp"
#include "otsuki/numerics.hpp"
#include "otsuki/profile.hpp"
#include "otsuki/shrinker.hpp"

namespace otsuki::cli {
namespace {

// ----- number rendering ------------------------------------------------
//
// One formatter feeds both the CSV and the JSON writer, so the two formats
// of a run carry identical numeric text, not merely values that parse the
// same. Default is the shortest string that round-trips to the exact double;
// --precision switches to %.{p}g for human reading.

std::string format_real(double v, const std::optional<int>& precision) {
  char buf[64];
  if (precision) {
    int len = std::snprintf(buf, sizeof buf, "%.*g", *precision, v);
    return std::string(buf, static_cast<std::size_t>(len));
  }
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ----- row tables -------------------------------------------------------

struct Cell {
  enum class Kind { Empty, Int, Real, Bool, Text };
  Kind kind = Kind::Empty;
  long long i = 0;
  double d = 0.0;
  bool b = false;
  std::string s;
};

Cell cell_empty() { return {}; }

Cell cell_int(long long v) {
  Cell c;
  c.kind = Cell::Kind::Int;
  c.i = v;
  return c;
}

Cell cell_real(double v) {
  Cell c;
  c.kind = Cell::Kind::Real;
  c.d = v;
  return c;
}

Cell cell_bool(bool v) {
  Cell c;
  c.kind = Cell::Kind::Bool;
  c.b = v;
  return c;
}

Cell cell_text(std::string v) {
  Cell c;
  c.kind = Cell::Kind::Text;
  c.s = std::move(v);
  return c;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Minimal CSV quoting: only fields containing a separator, quote, or line
// break get wrapped, with internal quotes doubled.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  out += '"';
  return out;
}

std::string render_cell_csv(const Cell& cell, const std::optional<int>& precision) {
  switch (cell.kind) {
    case Cell::Kind::Empty: return "";
    case Cell::Kind::Int: return std::to_string(cell.i);
    case Cell::Kind::Real: return format_real(cell.d, precision);
    case Cell::Kind::Bool: return cell.b ? "true" : "false";
    case Cell::Kind::Text: return csv_field(cell.s);
  }
  return "";
}

void write_csv(std::ostream& out, const Table& table,
               const std::optional<int>& precision) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << render_cell_csv(row[i], precision);
    }
    out << '\n';
  }
}

// Top-level shape is fixed: {"n": ..., "command": ..., "rows": [...]}.
// Cells that are empty in CSV are omitted from the row object.
void write_json(std::ostream& out, int n, const std::string& command,
                const Table& table, const std::optional<int>& precision) {
  out << "{\"n\":" << n << ",\"command\":" << json_string(command)
      << ",\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (r) out << ',';
    out << '{';
    bool first = true;
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& cell = row[i];
      if (cell.kind == Cell::Kind::Empty) continue;
      if (!first) out << ',';
      first = false;
      out << json_string(table.columns[i]) << ':';
      switch (cell.kind) {
        case Cell::Kind::Int: out << cell.i; break;
        case Cell::Kind::Real: out << format_real(cell.d, precision); break;
        case Cell::Kind::Bool: out << (cell.b ? "true" : "false"); break;
        case Cell::Kind::Text: out << json_string(cell.s); break;
        case Cell::Kind::Empty: break;
      }
    }
    out << '}';
  }
  out << "]}\n";
}

// ----- command bodies ---------------------------------------------------

const std::vector<std::string> kSummaryColumns = {
    "p", "s", "a", "T", "K", "w", "area", "entropy", "clifford_ratio"};

std::vector<Cell> summary_row(const geo::GeometrySummary& m) {
  return {cell_int(m.p),    cell_int(m.s),      cell_real(m.a),
          cell_real(m.T),   cell_real(m.K),     cell_real(m.w),
          cell_real(m.area), cell_real(m.entropy),
          cell_real(m.clifford_ratio)};
}

Table do_scan(const RunConfig& cfg) {
  const double a0 = geo::critical_parameter(cfg.n);
  const double lo = cfg.a_min ? *cfg.a_min : a0 * 1e-6;
  const double hi = cfg.a_max ? *cfg.a_max : a0 * (1.0 - 1e-6);
  const int points = cfg.grid_steps;

  // Geometric spacing: the interesting behavior sits at both ends of the
  // modulus interval, near 0 and near a0, on very different scales.
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = hi / lo;
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
  }

  const double clifford = geo::clifford_area(cfg.n, 1);
  std::vector<std::vector<Cell>> rows(grid.size());
  num::parallel_for(grid.size(), [&](std::size_t i) {
    const geo::ShapeParameter shape{cfg.n, grid[i]};
    const double T = geo::period_T(shape, cfg.quad_nodes);
    const double K = geo::rotation_angle(shape, cfg.quad_nodes);
    const double w = geo::area_density(shape, cfg.quad_nodes);
    // A bare modulus fixes no rotation number; report the sharp lower
    // envelope over closed members, area = w * p with p >= 2.
    const double area = 2.0 * w;
    rows[i] = {cell_real(grid[i]),
               cell_real(T),
               cell_real(K),
               cell_real(w),
               cell_real(area),
               cell_real(shrink::cone_entropy(cfg.n, area)),
               cell_real(area / clifford)};
  });

  Table table;
  table.columns = {"a", "T", "K", "w", "area", "entropy", "clifford_ratio"};
  table.rows = std::move(rows);
  return table;
}

Table do_solve(const RunConfig& cfg) {
  const geo::RotationSpec spec{*cfg.p, *cfg.s};
  Table table;
  table.columns = kSummaryColumns;
  table.rows.push_back(
      summary_row(geo::summarize(cfg.n, spec, cfg.tol, cfg.quad_nodes)));
  return table;
}

Table do_catalog(const RunConfig& cfg) {
  Table table;
  table.columns = kSummaryColumns;
  for (const auto& m :
       geo::catalog(cfg.n, cfg.max_s.value_or(10), cfg.tol, cfg.quad_nodes)) {
    table.rows.push_back(summary_row(m));
  }
  return table;
}

Table do_entropy(const RunConfig& cfg) {
  Table table;
  table.columns = {"source", "p", "s", "a", "area", "entropy"};
  for (const auto& rec : shrink::entropy_table(cfg.n, cfg.max_s.value_or(10),
                                               cfg.tol, cfg.quad_nodes)) {
    std::vector<Cell> row;
    row.push_back(cell_text(rec.source));
    row.push_back(rec.spec ? cell_int(rec.spec->p) : cell_empty());
    row.push_back(rec.spec ? cell_int(rec.spec->s) : cell_empty());
    row.push_back(rec.a ? cell_real(*rec.a) : cell_empty());
    row.push_back(cell_real(rec.area));
    row.push_back(cell_real(rec.entropy));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<bounds::CertificateReport> do_verify(const RunConfig& cfg) {
  const std::string which = cfg.theorem.value_or("all");
  std::vector<bounds::CertificateReport> reports;

  const auto add_theorem1 = [&] {
    const auto grid = bounds::default_a_grid(cfg.n, cfg.grid_steps);
    reports.push_back(bounds::certify_theorem1(cfg.n, grid, cfg.quad_nodes));
  };
  const auto add_envelopes = [&] {
    const double a0 = geo::critical_parameter(cfg.n);
    const std::vector<double> moduli = {a0 / 4.0, a0 / 2.0, 3.0 * a0 / 4.0};
    auto pair = bounds::certify_envelopes(cfg.n, moduli);
    reports.push_back(std::move(pair.first));
    reports.push_back(std::move(pair.second));
  };

  if (which == "1") {
    add_theorem1();
  } else if (which == "3") {
    reports.push_back(bounds::certify_theorem3(cfg.n, cfg.max_s.value_or(50),
                                               cfg.tol, cfg.quad_nodes));
  } else if (which == "4") {
    reports.push_back(
        bounds::certify_theorem4(cfg.n, cfg.tol, cfg.quad_nodes));
  } else if (which == "bounds") {
    add_envelopes();
  } else {
    add_theorem1();
    reports.push_back(bounds::certify_corollary2(cfg.n, cfg.max_s.value_or(10),
                                                 cfg.tol, cfg.quad_nodes));
    reports.push_back(bounds::certify_theorem3(cfg.n, cfg.max_s.value_or(50),
                                               cfg.tol, cfg.quad_nodes));
    reports.push_back(
        bounds::certify_theorem4(cfg.n, cfg.tol, cfg.quad_nodes));
    add_envelopes();
  }
  return reports;
}

Table certificate_table(const std::vector<bounds::CertificateReport>& reports) {
  Table table;
  table.columns = {"claim", "passed", "margin", "samples", "detail"};
  for (const auto& rep : reports) {
    table.rows.push_back({cell_text(rep.claim), cell_bool(rep.passed),
                          cell_real(rep.margin), cell_int(rep.samples),
                          cell_text(rep.detail)});
  }
  return table;
}

int do_profile(const RunConfig& cfg, std::ostream& out) {
  const geo::RotationSpec spec{*cfg.p, *cfg.s};
  const auto summary = geo::summarize(cfg.n, spec, cfg.tol, cfg.quad_nodes);
  const geo::ShapeParameter shape{cfg.n, summary.a};
  const auto path = prof::integrate_profile(shape, cfg.ode_steps);
  if (cfg.export_kind == "obj") {
    const auto mesh =
        prof::export_mesh_s3(path, spec, cfg.circle_samples, cfg.mesh_steps);
    prof::write_mesh_obj(out, mesh);
  } else {
    const auto rows =
        prof::export_profile_curve(path, cfg.copies.value_or(spec.s));
    prof::write_curve_csv(out, rows);
  }
  return 0;
}

// ----- argument parsing -------------------------------------------------

void require_admissible(int p, int s) {
  if (!geo::RotationSpec{p, s}.admissible()) {
    throw UsageError("(p,s) = (" + std::to_string(p) + "," +
                     std::to_string(s) +
                     ") is not admissible: p and s must be coprime with "
                     "1/2 < p/s < sqrt(2)/2");
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Minimal rotational hypersurfaces in the unit sphere: period "
               "map, areas, certificates, cone entropies, exports"};
  app.require_subcommand(1);

  RunConfig cfg;
  int p = 0, s = 0;
  double a_min = 0.0, a_max = 0.0;
  std::string output;
  std::string theorem;
  int max_s = 0;
  int copies = 0;
  int precision = 0;

  // Every subcommand registers its own instances of the shared flags; only
  // the parsed subcommand ever writes to these locals, so one set suffices.
  const auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--n", cfg.n, "ambient dimension minus one (n >= 2)")
        ->required();
    sub->add_option("--tol", cfg.tol,
                    "target tolerance for the period-map solver");
    sub->add_option("--quad-nodes", cfg.quad_nodes,
                    "Gauss nodes per quadrature panel");
    sub->add_option("-o,--output,--output-path", output,
                    "write output to this file instead of stdout");
    if (with_format) {
      sub->add_option("--format", cfg.format, "output format: csv or json");
      sub->add_option(
          "--precision", precision,
          "significant digits for reals (default: shortest round-trip)");
    }
  };

  CLI::App* scan = app.add_subcommand(
      "scan", "sweep the modulus interval and tabulate T, K, w, areas");
  add_common(scan, true);
  scan->add_option("--a-min", a_min, "low end of the modulus grid");
  scan->add_option("--a-max", a_max, "high end of the modulus grid");
  scan->add_option("--grid-steps", cfg.grid_steps, "number of grid points");

  CLI::App* solve = app.add_subcommand(
      "solve", "find the member with rotation angle 2*pi*p/s");
  add_common(solve, true);
  solve->add_option("--p", p, "rotation number")->required();
  solve->add_option("--s", s, "symmetry order")->required();

  CLI::App* catalog = app.add_subcommand(
      "catalog", "all closed members with s up to --max-s, sorted by area");
  add_common(catalog, true);
  catalog->add_option("--max-s", max_s, "largest symmetry order");

  CLI::App* verify = app.add_subcommand(
      "verify", "run inequality certificates and report margins");
  add_common(verify, true);
  verify->add_option("--theorem", theorem,
                     "which certificate: 1, 3, 4, or bounds (default all)");
  verify->add_option("--max-s", max_s, "symmetry-order breadth for catalogs");
  verify->add_option("--grid-steps", cfg.grid_steps,
                     "modulus grid size for the lower-bound certificate");

  CLI::App* entropy = app.add_subcommand(
      "entropy", "cone entropies for the sphere, Clifford, and catalog cones");
  add_common(entropy, true);
  entropy->add_option("--max-s", max_s, "largest symmetry order");

  CLI::App* profile = app.add_subcommand(
      "profile", "integrate one profile curve and export CSV or an OBJ mesh");
  add_common(profile, false);
  profile->add_option("--p", p, "rotation number")->required();
  profile->add_option("--s", s, "symmetry order")->required();
  profile->add_option("--export", cfg.export_kind,
                      "export kind: csv (curve) or obj (mesh, n = 2 only)");
  profile->add_option("--ode-steps", cfg.ode_steps,
                      "integration steps per period");
  profile->add_option("--copies", copies,
                      "periods in the curve export (default: s)");
  profile->add_option("--circle-samples", cfg.circle_samples,
                      "rotational resolution of the mesh");
  profile->add_option("--mesh-steps", cfg.mesh_steps,
                      "profile resolution of the mesh per copy");

  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("otsuki");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> ptrs;
  ptrs.reserve(full.size());
  for (const auto& token : full) ptrs.push_back(token.c_str());

  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::Error& e) {
    throw UsageError(std::string("argument error: ") + e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();

  const auto given = [&](const std::string& name) -> bool {
    const CLI::Option* opt = chosen->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  if (cfg.command == "solve" || cfg.command == "profile") {
    cfg.p = p;
    cfg.s = s;
  }
  if (given("--a-min")) cfg.a_min = a_min;
  if (given("--a-max")) cfg.a_max = a_max;
  if (given("--output")) cfg.output_path = output;
  if (given("--theorem")) cfg.theorem = theorem;
  if (given("--max-s")) cfg.max_s = max_s;
  if (given("--copies")) cfg.copies = copies;
  if (given("--precision")) cfg.precision = precision;

  // Range validation, mirroring the library preconditions so a bad value
  // dies here with exit 2 instead of surfacing as a library exception.
  if (cfg.n < 2 || cfg.n > 64)
    throw UsageError("--n must be between 2 and 64");
  if (!(cfg.tol > 0.0) || cfg.tol > 0.1)
    throw UsageError("--tol must lie in (0, 0.1]");
  if (cfg.quad_nodes < 2 || cfg.quad_nodes > 512)
    throw UsageError("--quad-nodes must be between 2 and 512");
  if (cfg.precision && (*cfg.precision < 1 || *cfg.precision > 17))
    throw UsageError("--precision must be between 1 and 17");
  if (cfg.format != "csv" && cfg.format != "json")
    throw UsageError("--format must be csv or json");

  if (cfg.command == "scan") {
    if (cfg.grid_steps < 2 || cfg.grid_steps > 1000000)
      throw UsageError("--grid-steps must be between 2 and 1000000");
    const double a0 = geo::critical_parameter(cfg.n);
    const double lo = cfg.a_min.value_or(a0 * 1e-6);
    const double hi = cfg.a_max.value_or(a0 * (1.0 - 1e-6));
    if (!(lo > 0.0) || !(hi < a0) || !(lo < hi)) {
      throw UsageError(
          "--a-min/--a-max must satisfy 0 < a-min < a-max < " +
          format_real(a0, std::nullopt) + " (the critical modulus for n = " +
          std::to_string(cfg.n) + ")");
    }
  }
  if (cfg.command == "solve" || cfg.command == "profile") {
    if (p < 1 || s < 1) throw UsageError("--p and --s must be positive");
    require_admissible(p, s);
  }
  if (cfg.command == "catalog" || cfg.command == "entropy") {
    if (cfg.max_s.value_or(10) < 3)
      throw UsageError("--max-s must be at least 3");
  }
  if (cfg.command == "verify") {
    if (cfg.theorem && theorem != "1" && theorem != "3" && theorem != "4" &&
        theorem != "bounds")
      throw UsageError("--theorem must be one of 1, 3, 4, bounds");
    if (cfg.grid_steps < 2 || cfg.grid_steps > 100000)
      throw UsageError("--grid-steps must be between 2 and 100000");
    const std::string which = cfg.theorem.value_or("all");
    if (cfg.max_s) {
      if ((which == "3" || which == "all") && *cfg.max_s < 7)
        throw UsageError("theorem 3 scans need --max-s at least 7");
      if (*cfg.max_s < 3) throw UsageError("--max-s must be at least 3");
    }
  }
  if (cfg.command == "profile") {
    if (cfg.export_kind != "csv" && cfg.export_kind != "obj")
      throw UsageError("--export must be csv or obj");
    if (cfg.export_kind == "obj" && cfg.n != 2)
      throw UsageError("OBJ export is available for n = 2 only (no faithful "
                       "3-D projection in higher dimensions)");
    if (cfg.ode_steps < 1000 || cfg.ode_steps > 10000000)
      throw UsageError("--ode-steps must be between 1000 and 10000000");
    if (cfg.copies && *cfg.copies < 1)
      throw UsageError("--copies must be at least 1");
    if (cfg.circle_samples < 16 || cfg.circle_samples > 4096)
      throw UsageError("--circle-samples must be between 16 and 4096");
    if (cfg.mesh_steps < 2 || cfg.mesh_steps > cfg.ode_steps)
      throw UsageError("--mesh-steps must be between 2 and --ode-steps");
  }

  return cfg;
}

int certificates_exit_code(
    const std::vector<bounds::CertificateReport>& reports) {
  for (const auto& rep : reports) {
    if (!rep.passed) return 1;
  }
  return 0;
}

int run(const RunConfig& cfg, std::ostream& out) {
  std::ofstream file;
  std::ostream* target = &out;
  if (cfg.output_path) {
    file.open(*cfg.output_path, std::ios::binary);
    if (!file) {
      throw UsageError("cannot open output path: " + *cfg.output_path);
    }
    target = &file;
  }

  int code = 0;
  if (cfg.command == "profile") {
    code = do_profile(cfg, *target);
  } else {
    Table table;
    if (cfg.command == "scan") {
      table = do_scan(cfg);
    } else if (cfg.command == "solve") {
      table = do_solve(cfg);
    } else if (cfg.command == "catalog") {
      table = do_catalog(cfg);
    } else if (cfg.command == "entropy") {
      table = do_entropy(cfg);
    } else if (cfg.command == "verify") {
      const auto reports = do_verify(cfg);
      table = certificate_table(reports);
      code = certificates_exit_code(reports);
    } else {
      throw UsageError("unknown command: " + cfg.command);
    }
    if (cfg.format == "json") {
      write_json(*target, cfg.n, cfg.command, table, cfg.precision);
    } else {
      write_csv(*target, table, cfg.precision);
    }
  }

  if (file.is_open()) {
    file.close();
    if (file.fail()) {
      throw NumericalError("failed while writing " + *cfg.output_path);
    }
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  try {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(parse_args(args), out);
  } catch (const HelpRequested& help) {
    out << help.text;
    return 0;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace otsuki::cli
