// Command-line front end: phantom rendering, data synthesis, reconstruction
// and the canned demo experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "tatrev/experiments.hpp"
#include "tatrev/io.hpp"
#include "tatrev/phantom.hpp"
#include "tatrev/recon.hpp"
#include "tatrev/spectral.hpp"

namespace fs = std::filesystem;
using namespace tatrev;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> bumps;
  std::vector<std::string> settings;
};

// Flags mirroring RunConfig keys; precedence is flag > config file > default.
void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file");
  cmd->add_option("--out", opts.out, "output directory");
  for (const char* key : {"n", "dt_factor", "dt_snap", "T", "gamma", "lambda", "lambda_taper", "phantom",
                          "noise", "seed", "iterations", "subspace", "reference"}) {
    std::string flag = std::string("--") + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    cmd->add_option_function<std::string>(
        flag, [&opts, key](const std::string& v) { opts.overrides[key] = v; }, std::string("override '") + key + "'");
  }
  cmd->add_option("--bump", opts.bumps, "phantom bump 'x,y,radius,amplitude' (repeatable, replaces configured bumps)");
  cmd->add_option("--set", opts.settings, "any configuration key as key=value (repeatable)");
}

RunConfig resolve(const CommonOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : parse_config(opts.config_path);
  for (const auto& s : opts.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& [key, value] : opts.overrides) apply_setting(cfg, key, value);
  if (!opts.bumps.empty()) {
    cfg.bumps.clear();
    for (const auto& b : opts.bumps) apply_setting(cfg, "bump", b);
  }
  if (!opts.out.empty()) cfg.out = opts.out;
  return cfg;
}

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

void write_cross_sections(const fs::path& path, const std::vector<std::string>& names,
                          const std::vector<const ScalarField*>& fields) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << 'x';
  for (const auto& name : names) out << ',' << name;
  out << '\n';
  std::vector<std::vector<std::pair<double, double>>> lines;
  for (const auto* f : fields) lines.push_back(central_cross_section(*f));
  for (std::size_t k = 0; k < lines.front().size(); ++k) {
    out << format_double(lines.front()[k].first);
    for (const auto& line : lines) out << ',' << format_double(line[k].second);
    out << '\n';
  }
}

void write_error_table(const fs::path& path, const ReconReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << "iteration,relative_l2_error\n";
  for (const auto& [k, err] : error_history(report)) out << k << ',' << format_double(err) << '\n';
}

std::string percent(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100 * v << '%';
  return s.str();
}

int run_phantom(const CommonOptions& opts) {
  const RunConfig cfg = resolve(opts);
  const Grid2D grid = cfg.grid();
  const ScalarField f = render_phantom(cfg.phantom_bumps(), grid);
  const fs::path dir = output_dir(cfg);
  write_field_pgm(dir / "phantom.pgm", f);
  write_field_csv(dir / "phantom.csv", f);
  write_cross_sections(dir / "phantom_cross_section.csv", {"phantom"}, {&f});
  std::cout << "wrote " << (dir / "phantom.pgm").string() << " and " << (dir / "phantom.csv").string() << '\n';
  return 0;
}

int run_forward(const CommonOptions& opts) {
  const RunConfig cfg = resolve(opts);
  const Grid2D grid = cfg.grid();
  const BoundarySpec bspec = cfg.boundary(grid);
  const SynthesizedData d = synthesize_for(cfg, grid, bspec);
  const fs::path dir = output_dir(cfg);
  const fs::path trace_path = cfg.trace.empty() ? dir / "trace.csv" : fs::path(cfg.trace);
  write_trace_csv(trace_path, d.noisy);
  std::ofstream metrics(dir / "forward_metrics.txt");
  metrics << "steps=" << d.noisy.steps() << " dt=" << format_double(grid.dt)
          << " signal_norm=" << format_double(d.clean.norm()) << " noise_ratio=" << format_double(d.noise_ratio)
          << '\n';
  std::cout << "wrote " << trace_path.string() << " (" << d.noisy.time_samples() << " time samples, noise ratio "
            << format_double(d.noise_ratio) << ")\n";
  return 0;
}

int run_reconstruct(const CommonOptions& opts, const std::string& trace_arg) {
  RunConfig cfg = resolve(opts);
  if (!trace_arg.empty()) cfg.trace = trace_arg;
  if (cfg.trace.empty()) throw ConfigError("reconstruct needs a trace file (--trace or key 'trace')");
  if (!fs::exists(cfg.trace)) throw Error("trace file '" + cfg.trace + "' does not exist");

  const Grid2D grid = cfg.grid();
  const BoundarySpec bspec = cfg.boundary(grid);
  const BoundaryTrace g = read_trace_csv(cfg.trace, bspec);
  const ReconConfig rc = recon_config_for(cfg, g.grid(), bspec);

  std::optional<ScalarField> reference;
  if (cfg.reference) reference = render_phantom(cfg.phantom_bumps(), g.grid());
  const ReconReport report = neumann_iterate(g, rc, reference);

  const fs::path dir = output_dir(cfg);
  const ScalarField& u = report.estimate.first;
  write_field_csv(dir / "reconstruction.csv", u);
  write_field_pgm(dir / "reconstruction.pgm", u);
  if (reference) {
    write_cross_sections(dir / "reconstruction_cross_section.csv", {"phantom", "reconstruction"},
                         {&*reference, &u});
    write_error_table(dir / "errors.csv", report);
    for (const auto& [k, err] : error_history(report))
      std::cout << "iteration " << k << ": relative L2 error " << percent(err) << '\n';
  } else {
    write_cross_sections(dir / "reconstruction_cross_section.csv", {"reconstruction"}, {&u});
  }
  std::cout << "wrote " << (dir / "reconstruction.csv").string() << '\n';
  return 0;
}

int run_demo(const std::string& name, const std::string& out) {
  const auto runs = demo_runs(name);
  int index = 0;
  for (const auto& run : runs) {
    const ExperimentResult r = run_experiment(run.config);
    std::cout << name << " [" << run.label << "]";
    if (r.noise_ratio > 0) std::cout << " noise ratio " << format_double(r.noise_ratio);
    std::cout << '\n';
    for (const auto& [k, err] : error_history(r.report))
      std::cout << "  iteration " << k << ": relative L2 error " << percent(err) << '\n';
    std::cout << "  final relative L2 error " << percent(r.report.per_iteration_errors.back()) << '\n';
    if (!out.empty()) {
      const fs::path dir = fs::path(out) / (runs.size() > 1 ? name + "-" + std::to_string(++index) : name);
      fs::create_directories(dir);
      write_field_pgm(dir / "phantom.pgm", r.phantom);
      write_field_csv(dir / "reconstruction.csv", r.report.estimate.first);
      write_field_pgm(dir / "reconstruction.pgm", r.report.estimate.first);
      write_cross_sections(dir / "cross_section.csv", {"phantom", "reconstruction"},
                           {&r.phantom, &r.report.estimate.first});
      write_error_table(dir / "errors.csv", r.report);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative time-reversal reconstruction for photoacoustic sources in a reflecting cavity"};
  app.require_subcommand(1);

  CommonOptions phantom_opts, forward_opts, recon_opts;
  auto* phantom = app.add_subcommand("phantom", "render the phantom (graymap + CSV)");
  add_common(phantom, phantom_opts);

  auto* forward = app.add_subcommand("forward", "synthesize boundary data with the series solver");
  add_common(forward, forward_opts);
  forward->add_option("--trace", forward_opts.overrides["trace"], "trace output path (default <out>/trace.csv)");

  std::string trace_arg;
  auto* reconstruct = app.add_subcommand("reconstruct", "time reversal + Neumann iteration on a trace file");
  add_common(reconstruct, recon_opts);
  reconstruct->add_option("trace_path,--trace", trace_arg, "boundary trace CSV");

  std::string demo_name, demo_out;
  auto* demo = app.add_subcommand("demo", "run a canned experiment and print its error summary");
  demo->add_option("name", demo_name, "fig1-full | fig1-partial | fig2-noise | fig3-iter-full | fig4-iter-partial")
      ->required();
  demo->add_option("--out", demo_out, "write images, cross sections and error tables here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (forward_opts.overrides["trace"].empty()) forward_opts.overrides.erase("trace");
    if (*phantom) return run_phantom(phantom_opts);
    if (*forward) return run_forward(forward_opts);
    if (*reconstruct) return run_reconstruct(recon_opts, trace_arg);
    if (*demo) return run_demo(demo_name, demo_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
