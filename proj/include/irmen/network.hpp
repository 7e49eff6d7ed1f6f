#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "irmen/circuit.hpp"
#include "irmen/image.hpp"
#include "irmen/params.hpp"
#include "irmen/rk4.hpp"
#include "irmen/rng.hpp"
#include "irmen/vec3.hpp"

namespace irmen {

/// Synapse weight from `source` onto `target` (flat row-major indices).
using WeightFn = std::function<double(std::size_t target, std::size_t source)>;

/// Neuron grid with a self + von Neumann neighborhood per cell. Edge and
/// corner cells keep only the neighbors that exist.
class Network {
 public:
  Network(std::size_t rows, std::size_t cols, ParamSet params, const WeightFn& weights = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }
  const ParamSet& params() const { return params_; }

  /// Neighborhood of neuron i, self first.
  std::span<const std::size_t> neighborhood(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const double> weights(std::size_t i) const {
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t max_neighborhood() const { return max_neighborhood_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  ParamSet params_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> neighbors_;
  std::vector<double> weights_;
  std::size_t max_neighborhood_ = 0;
};

/// Throws DimensionError for a zero dimension.
Network build_grid(std::size_t rows, std::size_t cols, const ParamSet& p,
                   const WeightFn& weights = {});

struct NeuronState {
  Vec3 m{0.0, 1.0, 0.0};
  double P = 0.0;  // C
  double V = 0.0;  // V
  double Y = 0.0;  // V
};

/// Per-neuron variables packed as [m.x, m.y, m.z, P, V, Y].
inline constexpr std::size_t kStateStride = 6;

struct NetworkState {
  std::vector<double> y;
  std::uint64_t step = 0;
  double t = 0.0;        // s
  double energy = 0.0;   // J, whole network
  PowerBreakdown power;  // at t

  std::size_t size() const { return y.size() / kStateStride; }
  NeuronState neuron(std::size_t i) const;
  void set_neuron(std::size_t i, const NeuronState& n);
  double m_y(std::size_t i) const { return y[i * kStateStride + 1]; }

  friend bool operator==(const NetworkState&, const NetworkState&) = default;
};

/// Independent per-neuron thermal streams derived from one seed.
class ThermalSource {
 public:
  ThermalSource(std::uint64_t seed, std::size_t neurons);

  /// One thermal field per neuron for the next step; zeros when T == 0.
  void sample(const ParamSet& p, std::span<Vec3> out);

 private:
  std::vector<RandomStream> streams_;
};

/// Draws m about +-y from the Boltzmann density exp(Delta*m_y^2) restricted
/// to the hemisphere of `sign`. Delta = infinity gives exactly +-y.
Vec3 sample_easy_axis(int sign, double delta, RandomStream& rng);

/// Magnetizations from the pixel signs, P = V = Y = 0, power evaluated at
/// t = 0. Throws DimensionError if the image does not match the grid.
NetworkState init_state(const Image& image, const Network& net, RandomStream& rng);

/// Effective field on neuron i for the given packed state.
Vec3 effective_field(std::span<const double> y, std::size_t i, const Vec3& thermal,
                     const ParamSet& p);

/// Time derivative of every packed variable, thermal field held fixed.
void rhs(std::span<const double> y, const Network& net, std::span<const Vec3> thermal,
         std::span<double> dydt);
std::vector<NeuronState> rhs(const NetworkState& s, const Network& net,
                             std::span<const Vec3> thermal);

/// Instantaneous network power for a state.
PowerBreakdown network_power(std::span<const double> y, const Network& net);

/// Advances a network state by params.dt with RK4, renormalizes every
/// magnetization and integrates power into the energy ledger (trapezoid).
class Integrator {
 public:
  Integrator(const Network& net, std::uint64_t thermal_seed);

  /// Throws NumericalError if any variable becomes non-finite.
  void step(NetworkState& s);

  const Network& network() const { return *net_; }

 private:
  const Network* net_;
  ThermalSource thermal_;
  std::vector<Vec3> h_thermal_;
  Rk4 rk4_;
};

NetworkState rk4_step(const NetworkState& s, Integrator& integrator);

/// Mean absolute deviation of m_y from the target pixels, in percent.
double error_metric(const NetworkState& s, const Image& target);
double error_metric(std::span<const double> m_y, const Image& target);

/// Sign of each m_y as an image.
Image readout_image(const NetworkState& s, std::size_t rows, std::size_t cols);

struct StopCondition {
  std::optional<double> target_E;  // percent
  double max_t = 500e-12;          // s
};

struct TraceOptions {
  std::size_t sample_every = 10;
  bool node_snapshots = false;
};

struct Trace {
  std::vector<double> times;   // s
  std::vector<double> errors;  // percent
  std::vector<double> energy;  // J, whole network
  std::vector<PowerBreakdown> power;
  std::vector<std::vector<double>> snapshots;  // m_y per neuron, when requested
  std::size_t neurons = 0;
  bool reached_target = false;

  std::size_t samples() const { return times.size(); }
};

/// Steps until E <= target_E (checked every step) or t >= max_t. Samples at
/// t = 0, every sample_every steps, and at the stopping step.
Trace run_until(NetworkState& s, Integrator& integrator, const StopCondition& stop,
                const Image& target, const TraceOptions& options = {});

}  // namespace irmen
