#include "irmen/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "irmen/errors.hpp"

namespace irmen {

Image gen_circle_image(std::size_t n) {
  if (n < 3) throw std::invalid_argument("circle image needs n >= 3");
  const double center = 0.5 * static_cast<double>(n - 1);
  const double radius = static_cast<double>(n) / 3.0;
  Image img(n, n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double d = std::hypot(static_cast<double>(r) - center, static_cast<double>(c) - center);
      if (d < radius) img.at(r, c) = 1;
    }
  }
  return img;
}

Image apply_noise(const Image& image, double fraction, RandomStream& rng) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("noise fraction must be in [0,1)");
  }
  const std::size_t n = image.size();
  const auto flips = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `flips` entries are a uniform subset.
  for (std::size_t i = 0; i < flips; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
  }
  Image out = image;
  for (std::size_t i = 0; i < flips; ++i) out.px[order[i]] = -out.px[order[i]];
  return out;
}

void validate_workload(const Workload& w) {
  if (w.image.size() == 0) throw std::invalid_argument("workload image is empty");
  if (!(w.noise_fraction >= 0.0 && w.noise_fraction < 1.0)) {
    throw std::invalid_argument("noise must be in [0,1)");
  }
  if (w.replicas == 0) throw std::invalid_argument("replicas must be >= 1");
  if (w.drives.empty()) throw std::invalid_argument("drive grid is empty");
  if (w.resistivities.empty()) throw std::invalid_argument("resistivity grid is empty");
  if (w.targets.empty()) throw std::invalid_argument("target list is empty");
  for (double t : w.targets) {
    if (!(t > 0.0 && t < 200.0)) throw std::invalid_argument("targets must be in (0,200)");
  }
  for (double d : w.drives) {
    if (!(d >= 0.0)) throw std::invalid_argument("drives must be >= 0");
  }
  for (double r : w.resistivities) {
    if (!(r > 0.0)) throw std::invalid_argument("resistivities must be > 0");
  }
  if (!(w.max_t >= 0.0)) throw std::invalid_argument("max_t must be >= 0");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("workload '" + std::string(key) + "': not a number: '" + std::string(text) +
                     "'");
  }
  return v;
}

std::uint64_t to_uint(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("workload '" + std::string(key) + "': not a non-negative integer: '" +
                     std::string(text) + "'");
  }
  return v;
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(to_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Workload parse_workload(std::string_view text, const std::string& base_dir) {
  Workload w;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("workload line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "image_size") {
      w.image = gen_circle_image(static_cast<std::size_t>(to_uint(key, value)));
    } else if (key == "image") {
      std::filesystem::path path{std::string(value)};
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      w.image = read_image_file(path.string());
    } else if (key == "noise") {
      w.noise_fraction = to_double(key, value);
    } else if (key == "replicas") {
      w.replicas = static_cast<std::size_t>(to_uint(key, value));
    } else if (key == "drives") {
      w.drives = to_list(key, value);
    } else if (key == "resistivities") {
      w.resistivities = to_list(key, value);
    } else if (key == "targets") {
      w.targets = to_list(key, value);
    } else if (key == "seed") {
      w.seed = to_uint(key, value);
    } else if (key == "max_t_ps") {
      w.max_t = to_double(key, value) * 1e-12;
    } else if (key == "stop_at_targets") {
      if (value == "true" || value == "1") {
        w.stop_at_targets = true;
      } else if (value == "false" || value == "0") {
        w.stop_at_targets = false;
      } else {
        throw ParseError("workload 'stop_at_targets' must be true or false");
      }
    } else {
      throw ParseError("workload line " + std::to_string(line_no) + ": unknown key '" +
                       std::string(key) + "'");
    }
  }
  return w;
}

std::optional<EnergyDelay> energy_delay(const Trace& trace, double target_E) {
  if (trace.samples() == 0) throw std::invalid_argument("energy_delay needs a nonempty trace");
  for (std::size_t k = 0; k < trace.samples(); ++k) {
    if (trace.errors[k] <= target_E) {
      EnergyDelay ed;
      ed.delay = trace.times[k];
      ed.energy_per_cell = trace.energy[k] / static_cast<double>(trace.neurons);
      ed.edp = ed.energy_per_cell * ed.delay;
      return ed;
    }
  }
  return std::nullopt;
}

ReplicaSeeds replica_seeds(std::uint64_t workload_seed, std::size_t replica) {
  const std::uint64_t base = derive_seed(workload_seed, replica);
  return {derive_seed(base, 1), derive_seed(base, 2), derive_seed(base, 3)};
}

ReplicaResult run_replica(const Workload& w, const ParamSet& cell_params, std::size_t replica) {
  const ReplicaSeeds seeds = replica_seeds(w.seed, replica);
  RandomStream noise_rng(seeds.noise);
  RandomStream init_rng(seeds.init);

  const Image noisy = apply_noise(w.image, w.noise_fraction, noise_rng);
  const Network net = build_grid(w.image.rows, w.image.cols, cell_params);
  NetworkState state = init_state(noisy, net, init_rng);
  Integrator integrator(net, seeds.thermal);

  StopCondition stop;
  stop.max_t = w.max_t;
  if (w.stop_at_targets) stop.target_E = *std::min_element(w.targets.begin(), w.targets.end());
  TraceOptions options;
  options.sample_every = 1;

  ReplicaResult result;
  try {
    const Trace trace = run_until(state, integrator, stop, w.image, options);
    result.final_error = trace.errors.back();
    for (double target : w.targets) result.per_target.push_back(energy_delay(trace, target));
  } catch (const NumericalError&) {
    result.failed = true;
    result.per_target.assign(w.targets.size(), std::nullopt);
  }
  return result;
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

// Two-pass sample statistics; zero spread for fewer than two values.
MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  CompensatedSum s;
  for (double x : xs) s.add(x);
  out.mean = s.value() / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  CompensatedSum sq;
  for (double x : xs) sq.add((x - out.mean) * (x - out.mean));
  out.stddev = std::sqrt(sq.value() / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace

CellStats aggregate(double drive, double rho, std::span<const double> targets,
                    std::span<const ReplicaResult> results) {
  CellStats cell;
  cell.drive = drive;
  cell.rho = rho;
  cell.replicas = results.size();

  std::vector<double> finals;
  for (const auto& r : results) {
    if (r.failed) {
      ++cell.failures;
    } else {
      finals.push_back(r.final_error);
    }
  }
  const MeanStd fin = mean_std(finals);
  cell.mean_final_error = fin.mean;
  cell.std_final_error = fin.stddev;

  const std::size_t completed = cell.replicas - cell.failures;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    std::vector<double> delays;
    std::vector<double> energies;
    for (const auto& r : results) {
      if (r.failed || !r.per_target[k]) continue;
      delays.push_back(r.per_target[k]->delay);
      energies.push_back(r.per_target[k]->energy_per_cell);
    }
    TargetStats ts;
    ts.target = targets[k];
    ts.reached = delays.size();
    const MeanStd d = mean_std(delays);
    const MeanStd e = mean_std(energies);
    ts.mean_delay = d.mean;
    ts.std_delay = d.stddev;
    ts.mean_energy = e.mean;
    ts.std_energy = e.stddev;
    ts.edp = ts.mean_energy * ts.mean_delay;
    ts.timeout_fraction =
        completed ? static_cast<double>(completed - ts.reached) / static_cast<double>(completed)
                  : 1.0;
    cell.targets.push_back(ts);
  }
  return cell;
}

MCStats monte_carlo(const Workload& w, const ParamSet& p, std::size_t jobs) {
  validate_workload(w);
  if (w.image.size() == 0) return {};

  struct Cell {
    double drive;
    double rho;
    ParamSet params;
  };
  std::vector<Cell> cells;
  for (double drive : w.drives) {
    for (double rho : w.resistivities) {
      ParamSet q = p;
      q.V_drive = drive;
      q.rho_IR = rho;
      cells.push_back({drive, rho, q});
    }
  }

  const std::size_t tasks = cells.size() * w.replicas;
  std::vector<ReplicaResult> results(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks; k = next++) {
      const std::size_t cell = k / w.replicas;
      const std::size_t replica = k % w.replicas;
      results[k] = run_replica(w, cells[cell].params, replica);
    }
  };

  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  MCStats stats;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    stats.cells.push_back(aggregate(
        cells[c].drive, cells[c].rho, w.targets,
        std::span<const ReplicaResult>(results.data() + c * w.replicas, w.replicas)));
  }
  return stats;
}

std::vector<SweepRow> sweep_report(const MCStats& stats) {
  std::vector<SweepRow> rows;
  for (const auto& cell : stats.cells) {
    for (const auto& t : cell.targets) {
      SweepRow row;
      row.drive = cell.drive;
      row.rho = cell.rho;
      row.target = t.target;
      row.replicas = cell.replicas;
      row.reached = t.reached;
      row.mean_delay = t.mean_delay;
      row.std_delay = t.std_delay;
      row.mean_energy = t.mean_energy;
      row.std_energy = t.std_energy;
      row.edp = t.edp;
      row.timeout_fraction = t.timeout_fraction;
      row.mean_final_error = cell.mean_final_error;
      row.std_final_error = cell.std_final_error;
      row.failures = cell.failures;
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.rho != b.rho) return a.rho < b.rho;
    if (a.target != b.target) return a.target < b.target;
    return a.drive < b.drive;
  });
  return rows;
}

}  // namespace irmen
