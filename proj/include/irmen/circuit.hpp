#pragma once

#include <cstddef>
#include <span>

#include "irmen/params.hpp"

namespace irmen {

struct CircuitState {
  double V = 0.0;  // ME capacitor voltage
  double Y = 0.0;  // IR gate (readout) voltage
};

struct PowerBreakdown {
  double p_drive = 0.0;   // W
  double p_leak = 0.0;    // W
  double p_charge = 0.0;  // W
  double total = 0.0;     // W

  PowerBreakdown& operator+=(const PowerBreakdown& o) {
    p_drive += o.p_drive;
    p_leak += o.p_leak;
    p_charge += o.p_charge;
    total += o.total;
    return *this;
  }
  friend bool operator==(const PowerBreakdown&, const PowerBreakdown&) = default;
};

/// Signed effective IR resistance, eta*(lambda/w_IR)*m_y*R_IR_x [Ohm].
double ir_resistance(double m_y, const ParamSet& p);

/// DC read current V_drive/(R_IR_z + R_drive_extra) [A].
double drive_current(const ParamSet& p);

inline double ir_voltage(double I_d, double R_X) { return I_d * R_X; }

/// Gate node relaxing toward the IR source: (V_IR - Y)/(R*C_Y) with
/// R = max(|R_X|, kGateResistanceFloor) [V/s].
double gate_rhs(double Y, double V_IR, double R_X, const ParamSet& p);

/// Rail-clamped synapse target for a neighborhood: clamp(k_sat*sum(w*Y)/N,
/// -V_DD, V_DD). Throws DimensionError for empty or mismatched lists.
double synapse_target(std::span<const double> neighbor_Y, std::span<const double> weights,
                      const ParamSet& p);

/// dV/dt = (synapse_target - V)/(C_ME*R_V) [V/s].
double synapse_drive(std::span<const double> neighbor_Y, std::span<const double> weights,
                     double V, const ParamSet& p);

/// Instantaneous node quantities needed for the power model.
struct NodeSnapshot {
  double V = 0.0;
  double Y = 0.0;
  double dV = 0.0;  // V/s
  double dY = 0.0;  // V/s
  std::size_t synapses = 1;  // synapses gated by this neuron's Y
};

/// Rail-to-rail crowbar current of one repeater gated at Y: a bell with peak
/// I_leak0 at Y = 0, suppressed by e^-4 at Y = +-V_DD, times the 2*V_DD rail
/// span [W].
double synapse_leak_power(double Y, const ParamSet& p);

/// Power drawn by one neuron and the synapses it gates.
PowerBreakdown neuron_power(const NodeSnapshot& node, const ParamSet& p);

/// Sum of neuron_power over all nodes.
PowerBreakdown power_snapshot(std::span<const NodeSnapshot> nodes, const ParamSet& p);

}  // namespace irmen
