#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace irmen {

/// Magnet box dimensions along x, y, z [nm].
struct FmDims {
  double l = 16.0;
  double w = 16.0;
  double t = 6.0;

  friend bool operator==(const FmDims&, const FmDims&) = default;
};

/// Device, material and circuit parameters.
///
/// Magnetic quantities are CGS (Oe, emu/cm^3, erg/cm^3), electrical ones SI
/// (V, A, F, Ohm). Lengths are nm, resistivity is mOhm*cm. Conversions happen
/// only at the call sites that mix the two systems.
struct ParamSet {
  double K = 6e5;             // erg/cm^3
  double V_FM = 1536.0;       // nm^3
  FmDims fm_dims{};           // nm
  double eta = 0.9;
  double M_s = 500.0;         // emu/cm^3
  double C_ME = 0.68e-15;     // F
  double zeta = 0.5;
  double lambda_IR = 1.0;     // nm
  double rho_IR = 10.0;       // mOhm*cm
  double w_IR = 16.0;         // nm
  double t_IR = 4.0;          // nm
  double alpha = 0.01;
  double gamma = 1.76e7;      // rad/(s*Oe)
  double T = 300.0;           // K
  double tau_FE = 7e-12;      // s
  double dt = 0.5e-12;        // s
  double V_drive = 1.0;       // V
  double V_DD = 0.5;          // V
  double R_drive_extra = 0.0; // Ohm
  double C_Y = 0.1e-15;       // F
  double R_V = 10e3;          // Ohm
  double k_sat = 0.65;
  double I_leak0 = 5e-6;      // A
  double F = 16.0;            // nm

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// Quantities that follow in closed form from a ParamSet.
struct DerivedReport {
  double H_K_mag = 0.0;        // Oe
  double Delta_barrier = 0.0;  // K*V/(k_B*T)
  double tau_N = 0.0;          // s, Neel-Arrhenius with 1 ns attempt time
  double sigma_T = 0.0;        // Oe, per component
  double R_IR_x = 0.0;         // Ohm
  double R_IR_z = 0.0;         // Ohm
  double R_X_at_my1 = 0.0;     // Ohm
  double I_d = 0.0;            // A
  double H_ME_at_VDD = 0.0;    // Oe, steady state at V_ME = V_DD

  // Explicit RK4 step sizes relative to the fastest local rates. Values
  // above ~2.8 are outside the RK4 stability region.
  double precession_step_number = 0.0;  // gamma*H_ME_at_VDD*dt
  double gate_step_number = 0.0;        // dt/(R_floor*C_Y)

  friend bool operator==(const DerivedReport&, const DerivedReport&) = default;
};

namespace units {
inline constexpr double kBoltzmannErg = 1.380649e-16;  // erg/K
inline constexpr double kNm3ToCm3 = 1e-21;
inline constexpr double kNmToM = 1e-9;
inline constexpr double kMilliOhmCmToOhmM = 1e-5;
inline constexpr double kJouleToErg = 1e7;
inline constexpr double kAttemptTime = 1e-9;  // s
}  // namespace units

/// Lower bound on the gate charging resistance so m_y = 0 still has a
/// finite time constant.
inline constexpr double kGateResistanceFloor = 100.0;  // Ohm

/// Parses `key = value` lines ('#' starts a comment). Keys are the ParamSet
/// field names; fm_dims takes three numbers. Missing keys keep their
/// defaults. Throws ParseError on malformed or unknown input and
/// ValidationError if the result violates an invariant.
ParamSet load_params(std::string_view config_text);
ParamSet load_params_file(const std::string& path);

/// Every violated invariant, one message per violation. Empty means valid.
std::vector<std::string> validate(const ParamSet& p);

DerivedReport derive_quantities(const ParamSet& p);

/// Applies a single `key = value` assignment to p; used by load_params and
/// by callers that override one field.
void set_param(ParamSet& p, std::string_view key, std::string_view value);

/// Serializes p as a config document that load_params reads back exactly.
std::string format_params(const ParamSet& p);

// Geometry helpers shared by derive_quantities and the circuit model.
double magnet_volume_cm3(const ParamSet& p);
double ir_resistance_x(const ParamSet& p);
double ir_resistance_z(const ParamSet& p);

}  // namespace irmen
