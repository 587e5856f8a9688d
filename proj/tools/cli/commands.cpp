#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "specshift/branch.hpp"
#include "specshift/error.hpp"
#include "specshift/hessian.hpp"
#include "specshift/io.hpp"
#include "specshift/nodal.hpp"
#include "specshift/random.hpp"
#include "specshift/schur.hpp"
#include "specshift/selftest.hpp"

namespace specshift::cli {

namespace {

using io::json;

enum class Format { Csv, Json };

struct RunConfig {
  double tol = kDefaultRelTol;
  double fd_step = 1e-4;
  std::uint64_t seed = 0;
  std::optional<std::string> format;
  std::string out_path;

  Format format_or(Format fallback) const {
    if (!format) return fallback;
    return *format == "csv" ? Format::Csv : Format::Json;
  }
};

double absolute_tol(const HermitianMatrix& m, double rel) { return rel * std::max(1.0, spectral_radius(m)); }

PerturbationFamily load_family(const std::string& path, double omega_scale, double rel_tol) {
  PerturbationFamily fam = io::family_from_json(io::read_json_file(path), rel_tol);
  if (omega_scale != 1.0) {
    fam.Omega = fam.Omega.scaled(omega_scale);
    validate_family(fam, rel_tol);
  }
  return fam;
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return io::format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Header plus one row per record, taking `keys` from each object.
void write_csv(std::ostream& os, const std::vector<json>& records, const std::vector<std::string>& keys) {
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << '\n';
  for (const json& r : records) {
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << (r.contains(keys[i]) ? csv_cell(r[keys[i]]) : "");
    os << '\n';
  }
}

// --- inertia-core ---------------------------------------------------------

int cmd_inertia(const RunConfig& cfg, const std::string& file, double shift, std::ostream& os) {
  const HermitianMatrix m = io::matrix_from_json(io::read_json_file(file)).shifted(shift);
  const Inertia in = inertia(m, absolute_tol(m, cfg.tol));
  const json j = io::to_json(in);
  if (cfg.format_or(Format::Json) == Format::Csv) {
    write_csv(os, {j}, {"minus", "zero", "plus", "ambiguous"});
  } else {
    os << j.dump() << '\n';
  }
  return kExitOk;
}

BlockPartition partition_of(const std::vector<Index>& first, Index n) {
  return BlockPartition::complement_of(first, n);
}

int cmd_schur(const RunConfig& cfg, const std::string& file, const std::vector<Index>& first, bool of_first,
              std::ostream& os) {
  const HermitianMatrix m = io::matrix_from_json(io::read_json_file(file));
  const BlockPartition p = partition_of(first, m.dim());
  const double tol = absolute_tol(m, cfg.tol);
  const HermitianMatrix c = of_first ? schur_complement_of_first(m, p, tol) : schur_complement(m, p, tol);
  const json j{{"complement", io::to_json(c)}, {"inertia", io::to_json(inertia(c, tol))}};
  if (cfg.format_or(Format::Json) == Format::Csv) {
    throw Error(ErrorCode::Parse, "schur output is a matrix; use --format json");
  }
  os << j.dump() << '\n';
  return kExitOk;
}

int cmd_haynsworth(const RunConfig& cfg, const std::string& file, const std::vector<Index>& first,
                   std::ostream& os) {
  const HermitianMatrix m = io::matrix_from_json(io::read_json_file(file));
  const BlockPartition p = partition_of(first, m.dim());
  const double tol = absolute_tol(m, cfg.tol);
  const HaynsworthReport r = haynsworth_report(m, p, tol);
  json j = io::to_json(r);
  if (r.kernel_condition_D_holds) j["factorization_residual"] = schur_factorization_residual(m, p, tol);
  if (cfg.format_or(Format::Json) == Format::Csv) {
    write_csv(os, {j},
              {"kernel_condition_D_holds", "kernel_condition_A_holds", "identity_primal_holds", "identity_dual_holds",
               "factorization_residual"});
  } else {
    os << j.dump() << '\n';
  }
  const bool ambiguous = r.inertia_M.ambiguous || r.inertia_D.ambiguous || r.inertia_schur_D.ambiguous ||
                         r.inertia_A.ambiguous || r.inertia_schur_A.ambiguous;
  const bool falsified = (r.kernel_condition_D_holds && !r.identity_primal_holds) ||
                         (r.kernel_condition_D_holds && r.kernel_condition_A_holds && !r.identity_dual_holds);
  return falsified && !ambiguous ? kExitFalsified : kExitOk;
}

// --- lateral ----------------------------------------------------------------

int cmd_shift(const RunConfig& cfg, const std::string& file, double omega_scale, std::ostream& os) {
  const PerturbationFamily fam = load_family(file, omega_scale, cfg.tol);
  const SpectralShift s = spectral_shift(fam, cfg.tol);
  const json j{{"sigma", s.sigma},
               {"inertia_S_shifted", io::to_json(s.shifted_S)},
               {"inertia_H0_shifted", io::to_json(s.shifted_H0)},
               {"ambiguous", s.ambiguous()}};
  if (cfg.format_or(Format::Json) == Format::Csv) {
    write_csv(os, {j}, {"sigma", "ambiguous"});
  } else {
    os << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_hessian(const RunConfig& cfg, const std::string& file, double omega_scale, std::ostream& os) {
  const PerturbationFamily fam = load_family(file, omega_scale, cfg.tol);
  const HessianReport r = hessian_Q(fam, cfg.tol);
  const json j = io::to_json(r);
  if (cfg.format_or(Format::Json) == Format::Csv) {
    write_csv(os, {j},
              {"morse_index", "nullity", "sigma", "i_minus_omega", "m", "theorem_index_holds", "theorem_nullity_holds",
               "ambiguous"});
  } else {
    os << j.dump() << '\n';
  }
  const bool holds = r.theorem_index_holds && r.theorem_nullity_holds;
  return holds || r.ambiguous ? kExitOk : kExitFalsified;
}

int cmd_flow(const RunConfig& cfg, const std::string& file, double omega_scale, double tmin, double tmax, int steps,
             std::ostream& os) {
  const PerturbationFamily fam = load_family(file, omega_scale, cfg.tol);
  const CMatrix coupling = fam.K0.adjoint() * fam.Omega.matrix() * fam.K0;
  std::vector<double> ts;
  std::vector<RVector> rows;
  for (int i = 0; i < steps; ++i) {
    const double t = i == steps - 1 ? tmax : tmin + (tmax - tmin) * i / (steps - 1);
    ts.push_back(t);
    rows.push_back(eig_herm(HermitianMatrix::hermitian_part(fam.S.matrix() + t * coupling)).values);
  }

  if (cfg.format_or(Format::Csv) == Format::Json) {
    json lambda = json::array();
    for (const RVector& r : rows) lambda.push_back(std::vector<double>(r.begin(), r.end()));
    os << json{{"t", ts}, {"lambda", std::move(lambda)}}.dump() << '\n';
    return kExitOk;
  }
  os << 't';
  for (Index j = 0; j < fam.n(); ++j) os << ",lambda_" << j + 1;
  os << '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    os << io::format_double(ts[i]);
    for (double v : rows[i]) os << ',' << io::format_double(v);
    os << '\n';
  }
  return kExitOk;
}

CMatrix load_direction(const std::string& path, const PerturbationFamily& fam) {
  const CMatrix v = io::complex_matrix_from_json(io::read_json_file(path));
  if (v.rows() != fam.k() || v.cols() != fam.n()) {
    throw Error(ErrorCode::DimensionMismatch, "direction is k x n", path);
  }
  return v;
}

std::string classify_center(const RestrictedHessian& rh) {
  if (rh.nullity > 0) return "degenerate";
  if (rh.morse_index == 0) return "minimum";
  if (rh.morse_index == static_cast<int>(rh.matrix.rows())) return "maximum";
  return "saddle";
}

int cmd_surface(const RunConfig& cfg, const std::string& file, double omega_scale, const std::string& dir1,
                const std::string& dir2, double range, int grid, std::ostream& os, std::ostream& err) {
  const PerturbationFamily fam = load_family(file, omega_scale, cfg.tol);

  // Unspecified directions are seeded real Gaussians of unit Frobenius norm.
  Rng rng(cfg.seed);
  auto direction = [&](const std::string& path) -> CMatrix {
    if (!path.empty()) return load_direction(path, fam);
    const CMatrix v = random_gaussian(fam.k(), fam.n(), rng, false);
    return v / v.norm();
  };
  const std::vector<CMatrix> dirs{direction(dir1), direction(dir2)};

  const RestrictedHessian rh = restricted_hessian(fam, dirs, cfg.tol);
  const RMatrix analytic = 2.0 * rh.matrix;
  const RMatrix fd = fd_hessian(fam, dirs, cfg.fd_step);
  const double scale = analytic.cwiseAbs().maxCoeff();
  const double fd_error = (fd - analytic).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);

  // Lambda over the grid: the center is matched to f, the center column is
  // followed outward in s2, and every row outward in s1 from that column.
  const int c = (grid - 1) / 2;
  std::vector<double> s(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) s[static_cast<std::size_t>(i)] = i == c ? 0.0 : range * (i - c) / c;
  std::vector<std::vector<BranchSample>> at(static_cast<std::size_t>(grid),
                                            std::vector<BranchSample>(static_cast<std::size_t>(grid)));
  auto sample = [&](int i, int j, const CVector& ref) {
    const double s1 = s[static_cast<std::size_t>(i)];
    const double s2 = s[static_cast<std::size_t>(j)];
    try {
      at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          match_eigenpair(assemble_H(fam, fam.K0 + s1 * dirs[0] + s2 * dirs[1]), ref);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BranchAmbiguity) throw;
      std::ostringstream where;
      where << "(s1, s2) = (" << io::format_double(s1) << ", " << io::format_double(s2) << ")";
      throw Error(ErrorCode::BranchAmbiguity, "branch overlap at grid point " + where.str());
    }
    return at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eigenvector;
  };
  sample(c, c, fam.f);
  for (int step : {-1, 1}) {
    for (int j = c + step; j >= 0 && j < grid; j += step) sample(c, j, at[c][static_cast<std::size_t>(j - step)].eigenvector);
  }
  for (int j = 0; j < grid; ++j) {
    for (int step : {-1, 1}) {
      for (int i = c + step; i >= 0 && i < grid; i += step) {
        sample(i, j, at[static_cast<std::size_t>(i - step)][static_cast<std::size_t>(j)].eigenvector);
      }
    }
  }

  const std::string kind = classify_center(rh);
  if (cfg.format_or(Format::Csv) == Format::Json) {
    json samples = json::array();
    for (int j = 0; j < grid; ++j) {
      for (int i = 0; i < grid; ++i) samples.push_back({s[i], s[j], at[i][j].lambda});
    }
    os << json{{"seed", cfg.seed},
               {"range", range},
               {"grid", grid},
               {"classification", kind},
               {"hessian_analytic", io::real_matrix_to_json(analytic)},
               {"hessian_fd", io::real_matrix_to_json(fd)},
               {"fd_relative_error", fd_error},
               {"dir1", io::complex_matrix_to_json(dirs[0])},
               {"dir2", io::complex_matrix_to_json(dirs[1])},
               {"samples", std::move(samples)}}
              .dump()
       << '\n';
    return kExitOk;
  }
  err << "# seed " << cfg.seed << '\n'
      << "# classification " << kind << '\n'
      << "# hessian_analytic " << io::real_matrix_to_json(analytic).dump() << '\n'
      << "# hessian_fd " << io::real_matrix_to_json(fd).dump() << '\n'
      << "# fd_relative_error " << io::format_double(fd_error) << '\n';
  os << "s1,s2,Lambda\n";
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      os << io::format_double(s[i]) << ',' << io::format_double(s[j]) << ',' << io::format_double(at[i][j].lambda)
         << '\n';
    }
  }
  return kExitOk;
}

// --- graph ------------------------------------------------------------------

int cmd_graph(const RunConfig& cfg, const std::string& file, int level, std::ostream& os) {
  const io::GraphFile gf = io::graph_from_json(io::read_json_file(file));
  const MagneticFrame frame = gf.frame ? *gf.frame : spanning_tree(gf.graph);
  NodalOptions opts;
  opts.rel_tol = cfg.tol;
  opts.fd_step = cfg.fd_step;

  std::vector<NodalReport> reports;
  if (level > 0) {
    reports.push_back(nodal_report(gf.graph, frame, level, opts));
  } else {
    reports = nodal_reports(gf.graph, frame, opts);
  }

  std::vector<json> records;
  bool falsified = false;
  for (const NodalReport& r : reports) {
    records.push_back(io::to_json(r));
    falsified = falsified || (r.assumptions_met && !r.theorem_holds);
  }
  if (cfg.format_or(Format::Json) == Format::Csv) {
    write_csv(os, records,
              {"n", "lambda", "flip_count", "surplus", "morse_index_fd", "morse_index_Q", "nullity", "theorem_holds",
               "assumptions_met", "assumption_note"});
  } else {
    os << json(records).dump() << '\n';
  }
  return falsified ? kExitFalsified : kExitOk;
}

// --- selftest ---------------------------------------------------------------

int cmd_selftest(const RunConfig& cfg, double scale, const std::string& emit_family, std::ostream& os,
                 std::ostream& err) {
  if (!emit_family.empty()) {
    Rng rng(cfg.seed);
    std::optional<PerturbationFamily> fam;
    for (int attempt = 0; attempt < 1000 && !fam; ++attempt) fam = draw_family(rng);
    if (!fam) throw Error(ErrorCode::NoConvergence, "no valid random family drawn");
    std::ofstream f(emit_family);
    if (!f) throw Error(ErrorCode::Parse, "cannot write " + emit_family);
    f << io::to_json(*fam).dump(2) << '\n';
    return kExitOk;
  }

  const std::vector<SuiteResult> results = run_selftest({cfg.seed, scale});
  std::vector<json> records;
  bool ok = true;
  for (const SuiteResult& r : results) {
    records.push_back({{"suite", r.name},
                       {"passed", r.passed},
                       {"failed", r.failed},
                       {"discarded", r.discarded},
                       {"first_failure", r.first_failure}});
    ok = ok && r.ok();
    // Timings vary run to run, so they stay off the deterministic output.
    err << "# " << r.name << ' ' << io::format_double(r.seconds) << " s\n";
  }
  if (cfg.format_or(Format::Csv) == Format::Json) {
    os << json{{"seed", cfg.seed}, {"scale", scale}, {"ok", ok}, {"suites", records}}.dump() << '\n';
  } else {
    write_csv(os, records, {"suite", "passed", "failed", "discarded", "first_failure"});
  }
  return ok ? kExitOk : kExitFalsified;
}

// --- error reporting --------------------------------------------------------

int report(std::ostream& err, std::string_view code, std::string_view klass, const std::string& invariant,
           const std::string& message, int exit_code) {
  err << json{{"error", code}, {"class", klass}, {"invariant", invariant}, {"message", message}}.dump() << '\n';
  return exit_code;
}

int report(std::ostream& err, const Error& e) {
  switch (classify(e.code())) {
    case ErrorClass::Parse:
      return report(err, to_string(e.code()), "parse", e.invariant(), e.what(), kExitParse);
    case ErrorClass::Invariant:
      return report(err, to_string(e.code()), "invariant", e.invariant(), e.what(), kExitInvariant);
    case ErrorClass::Numerical:
      return report(err, to_string(e.code()), "numerical", e.invariant(), e.what(), kExitNumerical);
  }
  return kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral shift, Schur complement inertia and magnetic nodal surplus checks", "specshift"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Relative rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "Write results to FILE instead of stdout");

  std::string file;
  double shift = 0.0;
  std::vector<Index> first;
  bool of_first = false;
  double omega_scale = 1.0;
  double tmin = 0.0;
  double tmax = 3.0;
  int steps = 301;
  std::string dir1;
  std::string dir2;
  double range = 1.0;
  int grid = 21;
  int level = 0;
  bool all_levels = false;
  double scale = 1.0;
  std::string emit_family;

  auto* inertia_cmd = app.add_subcommand("inertia", "Inertia of a Hermitian matrix");
  inertia_cmd->add_option("matrix", file, "Matrix JSON file")->required();
  inertia_cmd->add_option("--shift", shift, "Report the inertia of M - shift I");

  auto* schur_cmd = app.add_subcommand("schur", "Generalized Schur complement");
  schur_cmd->add_option("matrix", file, "Matrix JSON file")->required();
  schur_cmd->add_option("--first", first, "0-based indices of the leading block")->required()->delimiter(',');
  schur_cmd->add_flag("--of-first", of_first, "Complement of the leading block instead of the trailing one");

  auto* haynsworth_cmd = app.add_subcommand("haynsworth", "Inertia additivity identities");
  haynsworth_cmd->add_option("matrix", file, "Matrix JSON file")->required();
  haynsworth_cmd->add_option("--first", first, "0-based indices of the leading block")->required()->delimiter(',');

  auto* shift_cmd = app.add_subcommand("shift", "Spectral shift of a perturbation family");
  auto* hessian_cmd = app.add_subcommand("hessian", "Hessian operator Q and the index identities");
  auto* flow_cmd = app.add_subcommand("flow", "Eigenvalues of S + t K0* Omega K0 over a grid of t");
  auto* surface_cmd = app.add_subcommand("surface", "Eigenvalue branch over a two-parameter plane");
  for (auto* cmd : {shift_cmd, hessian_cmd, flow_cmd, surface_cmd}) {
    cmd->add_option("family", file, "Perturbation family JSON file")->required();
    cmd->add_option("--omega-scale", omega_scale, "Multiply Omega by this factor");
  }
  flow_cmd->add_option("--tmin", tmin, "First t");
  flow_cmd->add_option("--tmax", tmax, "Last t");
  flow_cmd->add_option("--steps", steps, "Number of grid points")->check(CLI::Range(2, 1 << 24));
  surface_cmd->add_option("--dir1", dir1, "First direction (complex k x n JSON); random if omitted");
  surface_cmd->add_option("--dir2", dir2, "Second direction; random if omitted");
  surface_cmd->add_option("--range", range, "Half-width r of the square [-r, r]^2")->check(CLI::PositiveNumber);
  surface_cmd->add_option("--grid", grid, "Points per axis (odd, >= 3)")
      ->check(CLI::Validator(
          [](const std::string& v) {
            const int m = std::stoi(v);
            return m >= 3 && m % 2 == 1 ? std::string() : std::string("grid must be odd and >= 3");
          },
          "ODD>=3"));

  auto* graph_cmd = app.add_subcommand("graph", "Nodal surplus against the magnetic Morse index");
  graph_cmd->add_option("graph", file, "Graph JSON file")->required();
  auto* level_opt = graph_cmd->add_option("--level", level, "1-based eigenvalue level")->check(CLI::PositiveNumber);
  auto* all_opt = graph_cmd->add_flag("--all", all_levels, "Every level (default)");
  level_opt->excludes(all_opt);

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the random property suites");
  selftest_cmd->add_option("--scale", scale, "Multiply every trial count")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--emit-family", emit_family, "Write one random valid family to FILE and exit");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    return report(err, "ParseError", "parse", "command line", e.what(), kExitParse);
  }

  std::ofstream file_out;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file_out.open(cfg.out_path);
    if (!file_out) return report(err, "ParseError", "parse", "--out", "cannot write " + cfg.out_path, kExitParse);
    os = &file_out;
  }

  try {
    if (inertia_cmd->parsed()) return cmd_inertia(cfg, file, shift, *os);
    if (schur_cmd->parsed()) return cmd_schur(cfg, file, first, of_first, *os);
    if (haynsworth_cmd->parsed()) return cmd_haynsworth(cfg, file, first, *os);
    if (shift_cmd->parsed()) return cmd_shift(cfg, file, omega_scale, *os);
    if (hessian_cmd->parsed()) return cmd_hessian(cfg, file, omega_scale, *os);
    if (flow_cmd->parsed()) return cmd_flow(cfg, file, omega_scale, tmin, tmax, steps, *os);
    if (surface_cmd->parsed()) return cmd_surface(cfg, file, omega_scale, dir1, dir2, range, grid, *os, err);
    if (graph_cmd->parsed()) return cmd_graph(cfg, file, level, *os);
    if (selftest_cmd->parsed()) return cmd_selftest(cfg, scale, emit_family, *os, err);
  } catch (const Error& e) {
    return report(err, e);
  } catch (const std::exception& e) {
    return report(err, "InternalError", "numerical", "", e.what(), kExitNumerical);
  }
  return kExitParse;
}

}  // namespace specshift::cli
