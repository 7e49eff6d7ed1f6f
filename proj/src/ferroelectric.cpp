#include "irmen/ferroelectric.hpp"

#include <cmath>

namespace irmen {

double polarization_rhs(double P, double V, const ParamSet& p) {
  return (p.C_ME * V - P) / p.tau_FE;
}

Vec3 me_field(double P, double V, const ParamSet& p) {
  const double moment = p.M_s * magnet_volume_cm3(p);  // emu
  const double energy = p.zeta * 2.0 * std::abs(P) * V * units::kJouleToErg;
  return {0.0, energy / moment, 0.0};
}

}  // namespace irmen
