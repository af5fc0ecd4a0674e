#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "svpqa/config.hpp"
#include "svpqa/symmetry.hpp"

namespace svpqa {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text;
}

void write_manifest(const fs::path& dir, const std::string& command, const ExperimentConfig& config) {
  write_text(dir / (command + ".manifest"), RunManifest::create(config).text());
}

Mode single_mode(const ExperimentConfig& config, const std::string& command) {
  if (config.modes.empty()) throw Error(ErrorCategory::config, "missing required field 'mode' for " + command);
  if (config.modes.size() != 1) throw Error(ErrorCategory::config, "field 'mode': " + command + " takes one mode");
  return config.modes.front();
}

void require_single_lattice(const ExperimentConfig& config) {
  if (!config.gram && !config.theta) throw Error(ErrorCategory::config, "missing required field 'theta' (or give 'gram')");
}

std::string coeff_text(const CoeffVector& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

void dispatch(const std::string& command, const ExperimentConfig& config, std::ostream& out) {
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  if (command == "solve") {
    require_single_lattice(config);
    const SvpResult svp = brute_force_svp(config.gram_matrix(), config.k);
    out << "min_norm_sq=" << format_real(svp.min_norm_sq) << "\n";
    out << "degeneracy=" << svp.degeneracy() << "\n";
    for (const CoeffVector& x : svp.solutions) out << "solution=" << coeff_text(x) << "\n";
  } else if (command == "anneal") {
    require_single_lattice(config);
    const Mode mode = single_mode(config, command);
    const PointRun run = evaluate_point(config, mode, config.gram_matrix(), config.T);
    const SweepRecord& record = run.record;
    const AnnealOutcome& outcome = run.outcome;
    {
      std::ofstream csv = open_output(dir / "anneal.csv");
      write_sweep_csv(csv, {record});
    }
    {
      std::ofstream csv = open_output(dir / "populations.csv");
      write_populations_csv(csv, outcome.populations);
    }
    write_sweep_csv(out, {record});
  } else if (command == "sweep-t") {
    if (config.modes.empty()) throw Error(ErrorCategory::config, "missing required field 'mode' for sweep-t");
    require_single_lattice(config);
    const std::vector<SweepRecord> records = sweep_T(config);
    std::ofstream csv = open_output(dir / "sweep_t.csv");
    write_sweep_csv(csv, records);
    out << "wrote " << records.size() << " records to " << (dir / "sweep_t.csv").string() << "\n";
  } else if (command == "sweep-theta") {
    if (config.modes.empty()) throw Error(ErrorCategory::config, "missing required field 'mode' for sweep-theta");
    const std::vector<SweepRecord> records = sweep_theta(config);
    std::ofstream csv = open_output(dir / "sweep_theta.csv");
    write_sweep_csv(csv, records);
    out << "wrote " << records.size() << " records to " << (dir / "sweep_theta.csv").string() << "\n";
  } else if (command == "spectrum") {
    require_single_lattice(config);
    const SpectrumRun run = run_spectrum(config);
    std::ofstream csv = open_output(dir / "spectrum.csv");
    write_spectrum_csv(csv, run.trace);
    out << "bx1=" << format_real(run.bx1) << " bx2=" << format_real(run.bx2) << "\n";
    for (int i = 0; i + 1 < run.trace.level_count(); ++i) {
      const GapResult g = min_gap(run.trace, i, i + 1);
      out << "min_gap(e" << i << ",e" << i + 1 << ")=" << format_real(g.gap) << " at s=" << format_real(g.s_at_min)
          << "\n";
    }
    out << "wrote " << (dir / "spectrum.csv").string() << "\n";
  } else if (command == "symmetry") {
    require_single_lattice(config);
    const Mode mode = config.modes.empty() ? Mode::ex : single_mode(config, command);
    const GramMatrix gram = config.gram_matrix();
    const RegisterShape shape(gram.dimension(), config.k);
    const Real bx1 = config.bx1.value_or(1.0);
    const FieldProfile profile = FieldProfile::from_ratio(gram.dimension(), bx1, config.field_ratio(mode));
    const BlockingReport report = blocked(gram, shape, profile, initial_state(mode, profile, shape));
    out << "mode=" << to_string(mode) << "\n" << report.text();

    nlohmann::json j;
    j["mode"] = to_string(mode);
    j["blocked"] = report.blocked;
    j["conserved_sites"] = report.conserved_sites;
    j["projection_norm"] = report.projection_norm;
    j["min_norm_sq"] = report.svp.min_norm_sq;
    nlohmann::json solutions = nlohmann::json::array();
    for (const CoeffVector& x : report.svp.solutions) solutions.push_back(std::vector<int>(x.data(), x.data() + x.size()));
    j["solutions"] = solutions;
    nlohmann::json sectors = nlohmann::json::array();
    for (const SectorWeight& s : report.sectors)
      sectors.push_back({{"signs", s.signs}, {"initial_weight", s.weight}, {"solution_overlap", s.solution_overlap}});
    j["sectors"] = sectors;
    write_text(dir / "symmetry.json", j.dump(2) + "\n");
  } else {
    throw Error(ErrorCategory::config, "unknown command '" + command + "'");
  }
  write_manifest(dir, command, config);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-annealing simulator for shortest-vector problems"};
  app.require_subcommand(1);

  // Every option maps to the config key of the same name with '-' -> '_'.
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  static const Flag flags[] = {
      {"--mode", "mode", "search modes, comma separated: gs, ex, sc"},
      {"--b1", "b1", "norm of the first basis vector"},
      {"--b2", "b2", "norm of the second basis vector"},
      {"--theta", "theta", "angle between basis vectors (radians or e.g. pi/18)"},
      {"--gram", "gram", "explicit Gram matrix, rows separated by ';'"},
      {"--k", "k", "coefficient bound"},
      {"--bx-ratio", "bx_ratio", "B_x^(1)/B_x^(2) for ex and sc"},
      {"--bx1", "bx1", "fixed B_x^(1); omit to optimize"},
      {"--bx-range", "bx_range", "B_x^(1) search range 'lo,hi'"},
      {"--T", "T", "annealing time"},
      {"--T-grid", "T_grid", "annealing times for sweep-t"},
      {"--gs-T-grid", "gs_T_grid", "gs annealing times optimized over in sweep-theta"},
      {"--theta-grid", "theta_grid", "angles for sweep-theta"},
      {"--steps", "steps", "'converge' or a fixed slice count"},
      {"--rel-tol", "rel_tol", "convergence tolerance on failure_prob"},
      {"--n-points", "n_points", "spectrum grid points"},
      {"--levels", "levels", "spectrum levels retained"},
      {"--out", "out", "output directory"},
  };

  std::string config_path;
  std::map<std::string, std::string> values;
  std::vector<CLI::App*> commands;
  for (const char* name : {"solve", "anneal", "sweep-t", "sweep-theta", "spectrum", "symmetry"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value config file");
    for (const Flag& f : flags) sub->add_option(f.name, values[f.key], f.help);
    commands.push_back(sub);
  }
  app.get_subcommand("solve")->description("brute-force shortest vectors in the coefficient box");
  app.get_subcommand("anneal")->description("single anneal; writes anneal.csv and populations.csv");
  app.get_subcommand("sweep-t")->description("failure probability against annealing time");
  app.get_subcommand("sweep-theta")->description("failure probability against basis angle");
  app.get_subcommand("spectrum")->description("instantaneous levels of H(s)");
  app.get_subcommand("symmetry")->description("parity-sector blocking report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  KeyValues overrides;
  for (CLI::App* sub : commands) {
    if (!sub->parsed()) continue;
    command = sub->get_name();
    for (const Flag& f : flags)
      if (sub->count(f.name) > 0) overrides[f.key] = values[f.key];
  }

  try {
    KeyValues file = config_path.empty() ? KeyValues{} : read_key_values_file(config_path);
    // spectrum falls back to the 1:2, theta = pi/6 instance.
    if (command == "spectrum") {
      auto given = [&](const char* key) { return file.count(key) > 0 || overrides.count(key) > 0; };
      if (!given("gram") && !given("b1") && !given("b2") && !given("theta")) {
        file["b1"] = "1";
        file["b2"] = "2";
        file["theta"] = "pi/6";
      }
    }
    dispatch(command, parse_config(file, overrides), out);
    return 0;
  } catch (const Error& e) {
    err << "error [" << category_name(e.category()) << "]: " << e.what() << "\n";
    return e.category() == ErrorCategory::config ? 2 : 3;
  } catch (const IoError& e) {
    err << "error [io]: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace svpqa
