#include "irmen/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "irmen/errors.hpp"
#include "irmen/image.hpp"
#include "irmen/network.hpp"

namespace irmen::cli {

namespace fs = std::filesystem;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

constexpr double kStabilityLimit = 2.8;

}  // namespace

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["config_path"] = m.config_path;
  j["seed"] = m.seed;
  j["out_dir"] = m.out_dir;
  j["timestamp"] = m.timestamp;
  j["argv"] = m.argv;
  j["params"] = m.params;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& dir, const RunManifest& m) {
  write_text(fs::path(dir) / "manifest.json", manifest_json(m));
}

std::string format_report(const ParamSet& p) {
  const DerivedReport d = derive_quantities(p);
  std::ostringstream os;
  os << "H_K_Oe = " << fmt(d.H_K_mag) << "\n"
     << "Delta_barrier = " << fmt(d.Delta_barrier) << "\n"
     << "tau_N_s = " << fmt(d.tau_N) << "\n"
     << "sigma_T_Oe = " << fmt(d.sigma_T) << "\n"
     << "R_IR_x_Ohm = " << fmt(d.R_IR_x) << "\n"
     << "R_IR_z_Ohm = " << fmt(d.R_IR_z) << "\n"
     << "R_X_at_my1_Ohm = " << fmt(d.R_X_at_my1) << "\n"
     << "I_d_A = " << fmt(d.I_d) << "\n"
     << "H_ME_at_VDD_Oe = " << fmt(d.H_ME_at_VDD) << "\n"
     << "precession_step_number = " << fmt(d.precession_step_number) << "\n"
     << "gate_step_number = " << fmt(d.gate_step_number) << "\n";
  const bool stable =
      d.precession_step_number < kStabilityLimit && d.gate_step_number < kStabilityLimit;
  os << "rk4_step_stable = " << (stable ? "yes" : "no") << "\n";
  // alpha, gamma, T, C_Y and R_V have no measured values; they are tuning knobs.
  os << "calibration_choice.alpha = " << fmt(p.alpha) << "\n"
     << "calibration_choice.gamma = " << fmt(p.gamma) << "\n"
     << "calibration_choice.T = " << fmt(p.T) << "\n"
     << "calibration_choice.C_Y = " << fmt(p.C_Y) << "\n"
     << "calibration_choice.R_V = " << fmt(p.R_V) << "\n";
  return os.str();
}

SimulateResult simulate(const ParamSet& p, const SimulateOptions& o) {
  const Image clean = o.image_path ? read_image_file(*o.image_path) : gen_circle_image(21);
  const ReplicaSeeds seeds = replica_seeds(o.seed, 0);
  RandomStream noise_rng(seeds.noise);
  RandomStream init_rng(seeds.init);

  SimulateResult r;
  r.noisy = apply_noise(clean, o.noise, noise_rng);
  const Network net = build_grid(clean.rows, clean.cols, p);
  NetworkState state = init_state(r.noisy, net, init_rng);
  Integrator integrator(net, seeds.thermal);

  StopCondition stop;
  stop.max_t = o.max_t;
  TraceOptions opts;
  opts.sample_every = o.sample_every;
  opts.node_snapshots = o.nodes;
  r.trace = run_until(state, integrator, stop, clean, opts);
  r.final_error = r.trace.errors.back();
  r.final_image = readout_image(state, clean.rows, clean.cols);
  return r;
}

std::string trace_csv(const Trace& trace) {
  std::string out = "t_ps,E_pct,energy_fJ_total,p_drive_uW,p_leak_uW,p_charge_uW\n";
  for (std::size_t k = 0; k < trace.samples(); ++k) {
    const PowerBreakdown& pw = trace.power[k];
    out += fmt(trace.times[k] * 1e12) + "," + fmt(trace.errors[k]) + "," +
           fmt(trace.energy[k] * 1e15) + "," + fmt(pw.p_drive * 1e6) + "," +
           fmt(pw.p_leak * 1e6) + "," + fmt(pw.p_charge * 1e6) + "\n";
  }
  return out;
}

std::string nodes_csv(const Trace& trace) {
  if (trace.snapshots.size() != trace.samples()) {
    throw std::invalid_argument("trace has no per-node snapshots");
  }
  std::string out = "t_ps";
  for (std::size_t i = 0; i < trace.neurons; ++i) out += ",m_y_" + std::to_string(i);
  out += "\n";
  for (std::size_t k = 0; k < trace.samples(); ++k) {
    out += fmt(trace.times[k] * 1e12);
    for (double my : trace.snapshots[k]) out += "," + fmt(my);
    out += "\n";
  }
  return out;
}

std::string summary_text(const SimulateResult& r, const std::vector<double>& targets) {
  std::ostringstream os;
  os << "cells = " << r.trace.neurons << "\n"
     << "initial_E_pct = " << fmt(r.trace.errors.front()) << "\n"
     << "final_E_pct = " << fmt(r.final_error) << "\n"
     << "final_t_ps = " << fmt(r.trace.times.back() * 1e12) << "\n"
     << "energy_fJ_total = " << fmt(r.trace.energy.back() * 1e15) << "\n";
  for (double target : targets) {
    const std::string key = "target_" + fmt(target);
    if (const auto ed = energy_delay(r.trace, target)) {
      os << key << ".reached = yes\n"
         << key << ".delay_ps = " << fmt(ed->delay * 1e12) << "\n"
         << key << ".energy_fJ_per_cell = " << fmt(ed->energy_per_cell * 1e15) << "\n"
         << key << ".edp_Js = " << fmt(ed->edp) << "\n";
    } else {
      os << key << ".reached = no\n";
    }
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "drive_V,rho_mOhm_cm,target_pct,replicas,reached,mean_delay_ps,std_delay_ps,"
      "mean_energy_fJ,std_energy_fJ,edp_Js,timeout_fraction,mean_final_E_pct,"
      "std_final_E_pct,failures\n";
  for (const SweepRow& r : rows) {
    out += fmt(r.drive) + "," + fmt(r.rho) + "," + fmt(r.target) + "," +
           std::to_string(r.replicas) + "," + std::to_string(r.reached) + "," +
           fmt(r.mean_delay * 1e12) + "," + fmt(r.std_delay * 1e12) + "," +
           fmt(r.mean_energy * 1e15) + "," + fmt(r.std_energy * 1e15) + "," + fmt(r.edp) +
           "," + fmt(r.timeout_fraction) + "," + fmt(r.mean_final_error) + "," +
           fmt(r.std_final_error) + "," + std::to_string(r.failures) + "\n";
  }
  return out;
}

std::uint64_t resolve_seed(std::uint64_t fallback) {
  const char* env = std::getenv("IRMEN_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string_view s(env);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("IRMEN_SEED is not a non-negative integer: '" + std::string(s) +
                                "'");
  }
  return v;
}

namespace {

struct Args {
  std::string config;
  std::string image;
  std::string workload;
  std::string out = ".";
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  double max_t_ps = 500.0;
  std::vector<double> targets;
  std::size_t sample_every = 1;
  bool nodes = false;
};

ParamSet load_config(const Args& a) {
  return a.config.empty() ? ParamSet{} : load_params_file(a.config);
}

RunManifest make_manifest(const Args& a, const std::string& command, std::uint64_t seed,
                          const ParamSet& p, int argc, const char* const* argv) {
  RunManifest m;
  m.config_path = a.config;
  m.command = command;
  m.seed = seed;
  m.out_dir = a.out;
  m.timestamp = utc_timestamp();
  m.argv.assign(argv, argv + argc);
  m.params = format_params(p);
  return m;
}

int cmd_report(const Args& a, std::ostream& out) {
  const ParamSet p = load_config(a);
  const std::string text = format_report(p);
  out << text;
  if (a.out != ".") {
    ensure_dir(a.out);
    write_text(fs::path(a.out) / "report.txt", text);
  }
  return kExitOk;
}

int cmd_simulate(const Args& a, const CLI::App& sub, std::ostream& out, int argc,
                 const char* const* argv) {
  const ParamSet p = load_config(a);
  SimulateOptions o;
  if (!a.image.empty()) o.image_path = a.image;
  o.noise = a.noise;
  o.seed = resolve_seed(a.seed);
  o.max_t = a.max_t_ps * 1e-12;
  if (sub.count("--targets") > 0) o.targets = a.targets;
  o.sample_every = a.sample_every;
  o.nodes = a.nodes;
  if (!(o.noise >= 0.0 && o.noise < 1.0)) throw std::invalid_argument("--noise must be in [0,1)");
  if (!(o.max_t >= 0.0)) throw std::invalid_argument("--max-t must be >= 0");

  const SimulateResult r = simulate(p, o);
  ensure_dir(a.out);
  const fs::path dir(a.out);
  write_text(dir / "trace.csv", trace_csv(r.trace));
  if (o.nodes) write_text(dir / "nodes.csv", nodes_csv(r.trace));
  const std::string summary = summary_text(r, o.targets);
  write_text(dir / "summary.txt", summary);
  write_text(dir / "noisy_image.txt", format_image(r.noisy));
  write_text(dir / "final_image.txt", format_image(r.final_image));
  write_manifest(a.out, make_manifest(a, "simulate", o.seed, p, argc, argv));
  out << summary;
  return kExitOk;
}

int cmd_sweep(const Args& a, const CLI::App& sub, std::ostream& out, int argc,
              const char* const* argv) {
  const ParamSet p = load_config(a);
  Workload w = parse_workload(read_text(a.workload), fs::path(a.workload).parent_path().string());
  if (sub.count("--seed") > 0) w.seed = a.seed;
  w.seed = resolve_seed(w.seed);
  if (sub.count("--max-t") > 0) w.max_t = a.max_t_ps * 1e-12;
  if (sub.count("--targets") > 0) w.targets = a.targets;
  validate_workload(w);

  const MCStats stats = monte_carlo(w, p, a.jobs);
  const std::string csv = sweep_csv(sweep_report(stats));
  ensure_dir(a.out);
  write_text(fs::path(a.out) / "sweep.csv", csv);
  write_manifest(a.out, make_manifest(a, "sweep", w.seed, p, argc, argv));
  out << csv;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spintronic CNN image-filter simulator", "irmen"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Args a;

  auto add_config = [&](CLI::App* s) {
    s->add_option("--config", a.config, "parameter file (key = value)");
    s->add_option("--out", a.out, "output directory");
  };

  CLI::App* report = app.add_subcommand("report", "print derived device quantities");
  add_config(report);

  CLI::App* sim = app.add_subcommand("simulate", "run one filtering simulation");
  add_config(sim);
  sim->add_option("--image", a.image, "input image (+1/-1 text grid); default 21x21 circle");
  sim->add_option("--noise", a.noise, "fraction of pixels flipped");
  sim->add_option("--seed", a.seed, "random seed (IRMEN_SEED overrides)");
  sim->add_option("--max-t", a.max_t_ps, "simulated time in ps");
  sim->add_option("--targets", a.targets, "error targets in percent")->delimiter(',');
  sim->add_option("--sample-every", a.sample_every, "trace sampling stride in steps")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--nodes", a.nodes, "also write nodes.csv with m_y per neuron");

  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over a workload");
  add_config(sweep);
  sweep->add_option("workload", a.workload, "workload file")->required();
  sweep->add_option("--seed", a.seed, "override the workload seed (IRMEN_SEED overrides)");
  sweep->add_option("--jobs", a.jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--max-t", a.max_t_ps, "override the simulated time in ps");
  sweep->add_option("--targets", a.targets, "override the error targets")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (report->parsed()) return cmd_report(a, out);
    if (sim->parsed()) return cmd_simulate(a, *sim, out, argc, argv);
    return cmd_sweep(a, *sweep, out, argc, argv);
  } catch (const ValidationError& e) {
    err << "invalid configuration:\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace irmen::cli
