#include "irmen/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "irmen/errors.hpp"
#include "irmen/ferroelectric.hpp"
#include "irmen/magnet.hpp"

namespace irmen {

namespace {
constexpr std::size_t kMaxNeighborhood = 5;
}

Network::Network(std::size_t rows, std::size_t cols, ParamSet params, const WeightFn& weights)
    : rows_(rows), cols_(cols), params_(std::move(params)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("grid needs at least one row and one column");
  }
  offsets_.reserve(size() + 1);
  offsets_.push_back(0);
  auto add = [&](std::size_t target, std::size_t source) {
    neighbors_.push_back(source);
    weights_.push_back(weights ? weights(target, source) : 1.0);
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t i = r * cols + c;
      add(i, i);
      if (r > 0) add(i, i - cols);
      if (r + 1 < rows) add(i, i + cols);
      if (c > 0) add(i, i - 1);
      if (c + 1 < cols) add(i, i + 1);
      offsets_.push_back(neighbors_.size());
      max_neighborhood_ = std::max(max_neighborhood_, offsets_.back() - offsets_[i]);
    }
  }
}

Network build_grid(std::size_t rows, std::size_t cols, const ParamSet& p,
                   const WeightFn& weights) {
  return Network(rows, cols, p, weights);
}

NeuronState NetworkState::neuron(std::size_t i) const {
  const double* v = y.data() + i * kStateStride;
  return {{v[0], v[1], v[2]}, v[3], v[4], v[5]};
}

void NetworkState::set_neuron(std::size_t i, const NeuronState& n) {
  double* v = y.data() + i * kStateStride;
  v[0] = n.m.x;
  v[1] = n.m.y;
  v[2] = n.m.z;
  v[3] = n.P;
  v[4] = n.V;
  v[5] = n.Y;
}

ThermalSource::ThermalSource(std::uint64_t seed, std::size_t neurons) {
  streams_.reserve(neurons);
  for (std::size_t i = 0; i < neurons; ++i) streams_.emplace_back(derive_seed(seed, i));
}

void ThermalSource::sample(const ParamSet& p, std::span<Vec3> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = thermal_field(streams_[i], p);
}

Vec3 sample_easy_axis(int sign, double delta, RandomStream& rng) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  if (!(delta < 1e12)) return {0.0, s, 0.0};

  // w = 1 - |m_y| has density exp(-delta*w*(2-w)) on [0,1]; propose from
  // exp(-delta*w) and accept with exp(-delta*w*(1-w)).
  double w = 0.0;
  for (;;) {
    const double u = rng.uniform();
    if (delta < 1e-12) {
      w = u;
    } else {
      w = -std::log1p(u * std::expm1(-delta)) / delta;
    }
    if (rng.uniform() < std::exp(-delta * w * (1.0 - w))) break;
  }
  const double my = 1.0 - w;
  const double transverse = std::sqrt(std::max(0.0, 1.0 - my * my));
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return {transverse * std::cos(phi), s * my, transverse * std::sin(phi)};
}

NetworkState init_state(const Image& image, const Network& net, RandomStream& rng) {
  if (image.rows != net.rows() || image.cols != net.cols()) {
    throw DimensionError("image is " + std::to_string(image.rows) + "x" +
                         std::to_string(image.cols) + ", grid is " + std::to_string(net.rows()) +
                         "x" + std::to_string(net.cols()));
  }
  const double delta = derive_quantities(net.params()).Delta_barrier;
  NetworkState s;
  s.y.assign(net.size() * kStateStride, 0.0);
  for (std::size_t i = 0; i < net.size(); ++i) {
    NeuronState n;
    n.m = sample_easy_axis(image.px[i], delta, rng);
    s.set_neuron(i, n);
  }
  s.power = network_power(s.y, net);
  return s;
}

Vec3 effective_field(std::span<const double> y, std::size_t i, const Vec3& thermal,
                     const ParamSet& p) {
  const double* v = y.data() + i * kStateStride;
  const Vec3 m{v[0], v[1], v[2]};
  return anisotropy_field(m, p) + demag_field(m, p) + thermal + me_field(v[3], v[4], p);
}

void rhs(std::span<const double> y, const Network& net, std::span<const Vec3> thermal,
         std::span<double> dydt) {
  const ParamSet& p = net.params();
  const double I_d = drive_current(p);
  std::array<double, kMaxNeighborhood> gates{};

  for (std::size_t i = 0; i < net.size(); ++i) {
    const double* v = y.data() + i * kStateStride;
    double* d = dydt.data() + i * kStateStride;
    const Vec3 m{v[0], v[1], v[2]};
    const double P = v[3];
    const double V = v[4];
    const double Y = v[5];

    const Vec3 dm = llg_rhs(m, effective_field(y, i, thermal[i], p), p);

    const auto hood = net.neighborhood(i);
    for (std::size_t k = 0; k < hood.size(); ++k) gates[k] = y[hood[k] * kStateStride + 5];
    const double R_X = ir_resistance(m.y, p);

    d[0] = dm.x;
    d[1] = dm.y;
    d[2] = dm.z;
    d[3] = polarization_rhs(P, V, p);
    d[4] = synapse_drive(std::span<const double>(gates.data(), hood.size()), net.weights(i), V,
                         p);
    d[5] = gate_rhs(Y, ir_voltage(I_d, R_X), R_X, p);
  }
}

std::vector<NeuronState> rhs(const NetworkState& s, const Network& net,
                             std::span<const Vec3> thermal) {
  std::vector<double> d(s.y.size());
  rhs(s.y, net, thermal, d);
  NetworkState tmp;
  tmp.y = std::move(d);
  std::vector<NeuronState> out(net.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = tmp.neuron(i);
  return out;
}

PowerBreakdown network_power(std::span<const double> y, const Network& net) {
  const ParamSet& p = net.params();
  const double I_d = drive_current(p);
  std::array<double, kMaxNeighborhood> gates{};
  PowerBreakdown total;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double* v = y.data() + i * kStateStride;
    const auto hood = net.neighborhood(i);
    for (std::size_t k = 0; k < hood.size(); ++k) gates[k] = y[hood[k] * kStateStride + 5];
    const double R_X = ir_resistance(v[1], p);

    NodeSnapshot node;
    node.V = v[4];
    node.Y = v[5];
    node.dV = synapse_drive(std::span<const double>(gates.data(), hood.size()),
                            net.weights(i), node.V, p);
    node.dY = gate_rhs(node.Y, ir_voltage(I_d, R_X), R_X, p);
    // Synapses are two-way, so neuron i gates as many synapses as it has
    // neighborhood members.
    node.synapses = hood.size();
    total += neuron_power(node, p);
  }
  return total;
}

Integrator::Integrator(const Network& net, std::uint64_t thermal_seed)
    : net_(&net),
      thermal_(thermal_seed, net.size()),
      h_thermal_(net.size()),
      rk4_(net.size() * kStateStride) {}

void Integrator::step(NetworkState& s) {
  const Network& net = *net_;
  const ParamSet& p = net.params();
  if (s.y.size() != net.size() * kStateStride) {
    throw DimensionError("state does not match the network size");
  }

  thermal_.sample(p, h_thermal_);
  rk4_.step(s.y, p.dt, [&](std::span<const double> y, std::span<double> dydt) {
    rhs(y, net, h_thermal_, dydt);
  });

  for (std::size_t i = 0; i < net.size(); ++i) {
    double* v = s.y.data() + i * kStateStride;
    for (std::size_t k = 0; k < kStateStride; ++k) {
      if (!std::isfinite(v[k])) {
        throw NumericalError("non-finite state at neuron " + std::to_string(i) + " after step " +
                                 std::to_string(s.step + 1),
                             i);
      }
    }
    const Vec3 m = renormalize({v[0], v[1], v[2]});
    v[0] = m.x;
    v[1] = m.y;
    v[2] = m.z;
  }

  const PowerBreakdown before = s.power;
  s.power = network_power(s.y, net);
  s.energy += 0.5 * p.dt * (before.total + s.power.total);
  ++s.step;
  s.t = static_cast<double>(s.step) * p.dt;
}

NetworkState rk4_step(const NetworkState& s, Integrator& integrator) {
  NetworkState next = s;
  integrator.step(next);
  return next;
}

double error_metric(std::span<const double> m_y, const Image& target) {
  if (m_y.size() != target.size()) {
    throw DimensionError("error metric: " + std::to_string(m_y.size()) + " neurons vs " +
                         std::to_string(target.size()) + " pixels");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m_y.size(); ++i) sum += std::abs(target.px[i] - m_y[i]);
  return 100.0 * sum / static_cast<double>(m_y.size());
}

double error_metric(const NetworkState& s, const Image& target) {
  if (s.size() != target.size()) {
    throw DimensionError("error metric: " + std::to_string(s.size()) + " neurons vs " +
                         std::to_string(target.size()) + " pixels");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += std::abs(target.px[i] - s.m_y(i));
  return 100.0 * sum / static_cast<double>(s.size());
}

Image readout_image(const NetworkState& s, std::size_t rows, std::size_t cols) {
  if (rows * cols != s.size()) throw DimensionError("readout shape does not match the state");
  Image img(rows, cols);
  for (std::size_t i = 0; i < s.size(); ++i) img.px[i] = s.m_y(i) >= 0.0 ? 1 : -1;
  return img;
}

namespace {

void record(Trace& trace, const NetworkState& s, double E, bool snapshot) {
  trace.times.push_back(s.t);
  trace.errors.push_back(E);
  trace.energy.push_back(s.energy);
  trace.power.push_back(s.power);
  if (snapshot) {
    std::vector<double> my(s.size());
    for (std::size_t i = 0; i < my.size(); ++i) my[i] = s.m_y(i);
    trace.snapshots.push_back(std::move(my));
  }
}

}  // namespace

Trace run_until(NetworkState& s, Integrator& integrator, const StopCondition& stop,
                const Image& target, const TraceOptions& options) {
  const ParamSet& p = integrator.network().params();
  const std::size_t every = std::max<std::size_t>(options.sample_every, 1);
  // Step budget from max_t, rounded so accumulated dt does not overshoot.
  const auto last_step = static_cast<std::uint64_t>(
      std::max(0.0, std::ceil(stop.max_t / p.dt - 1e-9)));

  Trace trace;
  trace.neurons = s.size();
  double E = error_metric(s, target);
  record(trace, s, E, options.node_snapshots);
  auto reached = [&] { return stop.target_E && E <= *stop.target_E; };
  if (reached()) {
    trace.reached_target = true;
    return trace;
  }

  const std::uint64_t first_step = s.step;
  while (s.step < last_step) {
    integrator.step(s);
    E = error_metric(s, target);
    const bool done = reached() || s.step >= last_step;
    if (done || (s.step - first_step) % every == 0) record(trace, s, E, options.node_snapshots);
    if (reached()) {
      trace.reached_target = true;
      break;
    }
  }
  return trace;
}

}  // namespace irmen
