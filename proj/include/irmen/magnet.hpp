#pragma once

#include "irmen/params.hpp"
#include "irmen/rng.hpp"
#include "irmen/vec3.hpp"

namespace irmen {

struct MagnetState {
  Vec3 m{0.0, 1.0, 0.0};  // unit magnetization M/M_s
};

/// Uniaxial easy-axis field along y [Oe].
Vec3 anisotropy_field(const Vec3& m, const ParamSet& p);

/// Box-shape demagnetizing estimate, -M_s*{m_x/l^2, m_y/w^2, m_z/t^2}
/// normalized by (1/l^2 + 1/w^2 + 1/t^2) [Oe]. No 4*pi factor.
Vec3 demag_field(const Vec3& m, const ParamSet& p);

/// Standard deviation of one thermal field component for time step p.dt [Oe].
double thermal_sigma(const ParamSet& p);

/// Three independent N(0, thermal_sigma^2) components drawn from rng.
/// Draws nothing when T == 0.
Vec3 thermal_field(RandomStream& rng, const ParamSet& p);

/// dm/dt = gamma*(m x H) - alpha*gamma*(m x (m x H)) [1/s].
Vec3 llg_rhs(const Vec3& m, const Vec3& H_eff, const ParamSet& p);

/// m/|m|; throws std::domain_error for a zero or non-finite vector.
Vec3 renormalize(const Vec3& m);

}  // namespace irmen
