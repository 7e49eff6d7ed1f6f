#include "irmen/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irmen/errors.hpp"

namespace irmen {

double ir_resistance(double m_y, const ParamSet& p) {
  return p.eta * (p.lambda_IR / p.w_IR) * m_y * ir_resistance_x(p);
}

double drive_current(const ParamSet& p) {
  return p.V_drive / (ir_resistance_z(p) + p.R_drive_extra);
}

double gate_rhs(double Y, double V_IR, double R_X, const ParamSet& p) {
  const double r = std::max(std::abs(R_X), kGateResistanceFloor);
  return (V_IR - Y) / (r * p.C_Y);
}

double synapse_target(std::span<const double> neighbor_Y, std::span<const double> weights,
                      const ParamSet& p) {
  if (neighbor_Y.empty() || neighbor_Y.size() != weights.size()) {
    throw DimensionError("synapse inputs: " + std::to_string(neighbor_Y.size()) +
                         " gate voltages vs " + std::to_string(weights.size()) + " weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < neighbor_Y.size(); ++i) sum += weights[i] * neighbor_Y[i];
  const double target = p.k_sat * sum / static_cast<double>(neighbor_Y.size());
  return std::clamp(target, -p.V_DD, p.V_DD);
}

double synapse_drive(std::span<const double> neighbor_Y, std::span<const double> weights,
                     double V, const ParamSet& p) {
  return (synapse_target(neighbor_Y, weights, p) - V) / (p.C_ME * p.R_V);
}

double synapse_leak_power(double Y, const ParamSet& p) {
  const double u = Y / p.V_DD;
  return 2.0 * p.V_DD * p.I_leak0 * std::exp(-4.0 * u * u);
}

PowerBreakdown neuron_power(const NodeSnapshot& node, const ParamSet& p) {
  PowerBreakdown out;
  out.p_drive = p.V_drive * drive_current(p);
  out.p_leak = static_cast<double>(node.synapses) * synapse_leak_power(node.Y, p);
  out.p_charge = std::abs(p.C_ME * node.V * node.dV) + std::abs(p.C_Y * node.Y * node.dY);
  out.total = out.p_drive + out.p_leak + out.p_charge;
  return out;
}

PowerBreakdown power_snapshot(std::span<const NodeSnapshot> nodes, const ParamSet& p) {
  PowerBreakdown sum;
  for (const auto& n : nodes) sum += neuron_power(n, p);
  return sum;
}

}  // namespace irmen
