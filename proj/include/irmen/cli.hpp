#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "irmen/experiments.hpp"
#include "irmen/params.hpp"

namespace irmen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumerical = 4;

inline constexpr const char* kToolVersion = "0.1.0";

/// Fixed nine-significant-digit rendering used by every CSV and report.
std::string fmt(double x);

/// Everything needed to rerun a command and regenerate its outputs.
struct RunManifest {
  std::string config_path;
  std::string command;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> argv;
  std::string params;  // resolved parameter document
};

std::string manifest_json(const RunManifest& m);
void write_manifest(const std::string& dir, const RunManifest& m);

/// DerivedReport as `key = value` lines plus notes on calibration choices.
std::string format_report(const ParamSet& p);

struct SimulateOptions {
  std::optional<std::string> image_path;  // default: 21x21 circle
  double noise = 0.0;
  std::uint64_t seed = 1;
  double max_t = 500e-12;  // s
  std::vector<double> targets{5.5};
  std::size_t sample_every = 1;
  bool nodes = false;
};

struct SimulateResult {
  Trace trace;
  Image noisy;
  Image final_image;
  double final_error = 0.0;
};

/// Runs one filtering simulation with the seeds of replica 0 of `seed`.
SimulateResult simulate(const ParamSet& p, const SimulateOptions& o);

/// trace.csv body: t_ps,E_pct,energy_fJ_total,p_drive_uW,p_leak_uW,p_charge_uW
std::string trace_csv(const Trace& trace);
/// t_ps then m_y of each neuron in row-major order; requires snapshots.
std::string nodes_csv(const Trace& trace);
std::string summary_text(const SimulateResult& r, const std::vector<double>& targets);

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Seed from IRMEN_SEED when set, else the fallback. Throws
/// std::invalid_argument on a malformed value.
std::uint64_t resolve_seed(std::uint64_t fallback);

/// Entry point of the irmen tool. Never throws; returns an exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace irmen::cli
