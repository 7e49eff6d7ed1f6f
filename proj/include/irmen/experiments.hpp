#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irmen/image.hpp"
#include "irmen/network.hpp"
#include "irmen/params.hpp"
#include "irmen/rng.hpp"

namespace irmen {

/// Filled circle of radius n/3 centered in an n x n grid: +1 strictly inside,
/// -1 elsewhere. For n >= 4 it is a fixed point of the uniform five-cell
/// majority template. Throws for n < 3.
Image gen_circle_image(std::size_t n);

/// Flips exactly round(fraction * N) distinct pixels chosen uniformly.
Image apply_noise(const Image& image, double fraction, RandomStream& rng);

/// Monte Carlo workload over a (drive, resistivity) grid.
struct Workload {
  Image image = gen_circle_image(21);
  double noise_fraction = 0.1;
  std::size_t replicas = 50;
  std::vector<double> drives{1.0};          // V
  std::vector<double> resistivities{10.0};  // mOhm*cm
  std::vector<double> targets{5.5};         // percent
  std::uint64_t seed = 1;
  double max_t = 500e-12;  // s
  /// End a replica once every target is reached instead of running to max_t.
  bool stop_at_targets = false;
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate_workload(const Workload& w);

/// Parses `key = value` lines: image_size, image (path), noise, replicas,
/// drives, resistivities, targets (comma lists), seed, max_t_ps,
/// stop_at_targets. Relative image paths resolve against base_dir.
Workload parse_workload(std::string_view text, const std::string& base_dir = ".");

struct EnergyDelay {
  double energy_per_cell = 0.0;  // J
  double delay = 0.0;            // s
  double edp = 0.0;              // J*s
};

/// First sample with E <= target; nullopt when the target is never reached.
std::optional<EnergyDelay> energy_delay(const Trace& trace, double target_E);

struct TargetStats {
  double target = 0.0;  // percent
  std::size_t reached = 0;
  double mean_delay = 0.0;   // s
  double std_delay = 0.0;    // s
  double mean_energy = 0.0;  // J per cell
  double std_energy = 0.0;   // J per cell
  double edp = 0.0;          // mean_energy * mean_delay
  double timeout_fraction = 0.0;

  friend bool operator==(const TargetStats&, const TargetStats&) = default;
};

struct CellStats {
  double drive = 0.0;  // V
  double rho = 0.0;    // mOhm*cm
  std::size_t replicas = 0;
  std::size_t failures = 0;  // non-finite runs
  double mean_final_error = 0.0;  // percent, at the end of each run
  double std_final_error = 0.0;
  std::vector<TargetStats> targets;

  friend bool operator==(const CellStats&, const CellStats&) = default;
};

struct MCStats {
  std::vector<CellStats> cells;
  friend bool operator==(const MCStats&, const MCStats&) = default;
};

/// Result of one simulated replica, before aggregation.
struct ReplicaResult {
  bool failed = false;
  double final_error = 0.0;
  std::vector<std::optional<EnergyDelay>> per_target;
};

/// Seeds used by replica r of a workload; shared by every sweep cell so cells
/// see the same noise patterns and initial states.
struct ReplicaSeeds {
  std::uint64_t noise;
  std::uint64_t init;
  std::uint64_t thermal;
};
ReplicaSeeds replica_seeds(std::uint64_t workload_seed, std::size_t replica);

/// Runs one replica of one sweep cell.
ReplicaResult run_replica(const Workload& w, const ParamSet& cell_params, std::size_t replica);

/// Aggregates replica results in the order given (compensated sums).
CellStats aggregate(double drive, double rho, std::span<const double> targets,
                    std::span<const ReplicaResult> results);

/// Every (drive, rho) cell times `replicas` runs, spread over `jobs` threads.
/// Output does not depend on `jobs`.
MCStats monte_carlo(const Workload& w, const ParamSet& p, std::size_t jobs = 1);

struct SweepRow {
  double drive = 0.0;
  double rho = 0.0;
  double target = 0.0;
  std::size_t replicas = 0;
  std::size_t reached = 0;
  double mean_delay = 0.0;
  double std_delay = 0.0;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  double edp = 0.0;
  double timeout_fraction = 0.0;
  double mean_final_error = 0.0;
  double std_final_error = 0.0;
  std::size_t failures = 0;
};

/// One row per (cell, target), sorted by (rho, target, drive).
std::vector<SweepRow> sweep_report(const MCStats& stats);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace irmen
