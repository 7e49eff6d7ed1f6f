#pragma once

#include "irmen/params.hpp"
#include "irmen/vec3.hpp"

namespace irmen {

struct FerroState {
  double P = 0.0;  // C, signed
};

/// Linear-capacitor relaxation, dP/dt = (C_ME*V - P)/tau_FE [C/s].
double polarization_rhs(double P, double V, const ParamSet& p);

/// Magnetoelectric coupling field [Oe], along y.
///
/// Magnitude is zeta*2*|P*V| divided by the magnet's total moment
/// M_s*V_FM (J converted to erg); the direction follows the sign of V. At
/// P = C_ME*V this is zeta*2*C_ME*V^2/(M_s*V_FM) in magnitude.
Vec3 me_field(double P, double V, const ParamSet& p);

}  // namespace irmen
