// Acceptance runner: one PASS/FAIL line per criterion.
//
//   irmen_acceptance            run every criterion
//   irmen_acceptance 3 5        run only criteria 3 and 5
//
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "irmen/cli.hpp"
#include "irmen/experiments.hpp"
#include "irmen/ferroelectric.hpp"
#include "irmen/rk4.hpp"
#include "properties.hpp"

namespace {

using namespace irmen;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::size_t jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

Outcome thermal_stability() {
  std::ostringstream out, err;
  const char* argv[] = {"irmen", "report"};
  if (cli::run(2, argv, out, err) != 0) return {false, "report failed: " + err.str()};
  std::istringstream lines(out.str());
  std::string line;
  const std::string key = "Delta_barrier = ";
  while (std::getline(lines, line)) {
    if (line.rfind(key, 0) == 0) {
      const double delta = std::stod(line.substr(key.size()));
      return {delta >= 21.5 && delta <= 23.0, "Delta_barrier = " + num(delta) + " (band 21.5-23)"};
    }
  }
  return {false, "report has no Delta_barrier line"};
}

Outcome ferroelectric_relaxation() {
  const ParamSet p;
  const double V = 0.5;
  std::vector<double> P{0.0};
  Rk4 rk(1);
  const auto steps = static_cast<int>(std::lround(35e-12 / p.dt));
  for (int k = 0; k < steps; ++k) {
    rk.step(P, p.dt, [&](std::span<const double> y, std::span<double> d) {
      d[0] = polarization_rhs(y[0], V, p);
    });
  }
  const double target = p.C_ME * V;
  const double rel = std::abs(P[0] - target) / target;
  return {rel <= 0.012, "|P(35 ps) - C_ME V| / C_ME V = " + num(100.0 * rel) + "% (limit 1.2%)"};
}

Outcome filtering_headline() {
  Workload w;  // 21x21 circle, 10% noise, 50 replicas, 1 V, 10 mOhm*cm, 5.5%
  const MCStats stats = monte_carlo(w, props::calibrated(), jobs());
  const CellStats& cell = stats.cells.front();
  const TargetStats& t = cell.targets.front();
  if (t.reached == 0) return {false, "no replica reached 5.5%"};
  const double delay_ps = t.mean_delay * 1e12;
  const double energy_fJ = t.mean_energy * 1e15;
  const bool ok = delay_ps >= 10.0 && delay_ps <= 300.0 && energy_fJ >= 1.0 &&
                  energy_fJ <= 100.0 && t.edp >= 7e-26 && t.edp <= 7e-24;
  return {ok, "delay " + num(delay_ps) + " ps [10,300], energy " + num(energy_fJ) +
                  " fJ/cell [1,100], EDP " + num(t.edp) + " J*s [7e-26,7e-24], reached " +
                  std::to_string(t.reached) + "/" + std::to_string(cell.replicas)};
}

Outcome drive_sweet_spot() {
  Workload w;
  w.drives = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  w.resistivities = {10.0};
  const MCStats stats = monte_carlo(w, props::calibrated(), jobs());
  std::string curve;
  const CellStats* best = &stats.cells.front();
  double e300 = 0.0, e500 = 0.0;
  for (const CellStats& c : stats.cells) {
    curve += num(c.drive) + "V:" + num(c.mean_final_error) + " ";
    if (c.mean_final_error < best->mean_final_error) best = &c;
    if (std::abs(c.drive - 0.3) < 1e-9) e300 = c.mean_final_error;
    if (std::abs(c.drive - 0.5) < 1e-9) e500 = c.mean_final_error;
  }
  const bool argmin_ok = best->drive >= 0.5 - 1e-9 && best->drive <= 0.6 + 1e-9;
  const bool low_ok = e300 > e500;
  return {argmin_ok && low_ok, "argmin " + num(best->drive) + " V (want 0.5-0.6), E(0.3 V) " +
                                   num(e300) + " > E(0.5 V) " + num(e500) + " " +
                                   (low_ok ? "yes" : "no") + "; final E% " + curve};
}

Outcome resistivity_benefit() {
  Workload w;
  w.drives = {0.7};
  w.resistivities = {1.0, 10.0, 20.0};
  const MCStats stats = monte_carlo(w, props::calibrated(), jobs());
  bool ok = true;
  std::string curve;
  for (std::size_t k = 0; k < stats.cells.size(); ++k) {
    const TargetStats& t = stats.cells[k].targets.front();
    curve += "rho " + num(stats.cells[k].rho) + ": " + num(t.mean_energy * 1e15) + "+-" +
             num(t.std_energy * 1e15) + " fJ (" + std::to_string(t.reached) + " reached) ";
    if (t.reached == 0) ok = false;
    if (k > 0) {
      const TargetStats& prev = stats.cells[k - 1].targets.front();
      ok = ok && t.mean_energy <= prev.mean_energy + prev.std_energy;
    }
  }
  return {ok, curve};
}

Outcome property_suite() {
  const std::string scratch =
      (std::filesystem::temp_directory_path() / "irmen_acceptance_props").string();
  const std::vector<std::pair<std::string, std::function<props::Verdict()>>> checks{
      {"rk4 order", props::rk4_global_order},
      {"norm drift", [] { return props::norm_drift(100000); }},
      {"damping", props::damping_monotonicity},
      {"thermal moments", [] { return props::thermal_moments(1000000); }},
      {"boltzmann", props::boltzmann_equilibrium},
      {"synapse fixed point", props::synapse_fixed_point},
      {"3x3 fixed points", props::fixed_points_3x3},
      {"error endpoints", props::error_metric_endpoints},
      {"determinism", [&] { return props::determinism(scratch); }},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [name, check] : checks) {
    const props::Verdict v = check();
    ok = ok && v.pass;
    detail += "\n    " + std::string(v.pass ? "ok   " : "FAIL ") + name + ": " + v.detail;
  }
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "thermal stability", 1.0, thermal_stability},
    {2, "ferroelectric relaxation", 1.0, ferroelectric_relaxation},
    {3, "filtering headline", 120.0, filtering_headline},
    {4, "drive sweet spot", 600.0, drive_sweet_spot},
    {5, "resistivity benefit", 600.0, resistivity_benefit},
    {6, "property suite", 60.0, property_suite},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    all_ok = all_ok && pass;
    std::printf("criterion %d %s: %s | %s | %.2f s (budget %.0f s)\n", c.id, c.name,
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
