#include "irmen/magnet.hpp"

#include <stdexcept>

namespace irmen {

Vec3 anisotropy_field(const Vec3& m, const ParamSet& p) {
  return {0.0, 2.0 * p.K / p.M_s * m.y, 0.0};
}

Vec3 demag_field(const Vec3& m, const ParamSet& p) {
  const double il2 = 1.0 / (p.fm_dims.l * p.fm_dims.l);
  const double iw2 = 1.0 / (p.fm_dims.w * p.fm_dims.w);
  const double it2 = 1.0 / (p.fm_dims.t * p.fm_dims.t);
  const double scale = -p.M_s / (il2 + iw2 + it2);
  return {scale * il2 * m.x, scale * iw2 * m.y, scale * it2 * m.z};
}

double thermal_sigma(const ParamSet& p) {
  const double moment = p.M_s * magnet_volume_cm3(p);
  return std::sqrt(2.0 * units::kBoltzmannErg * p.T * p.alpha / (p.gamma * moment * p.dt));
}

Vec3 thermal_field(RandomStream& rng, const ParamSet& p) {
  if (p.T == 0.0) return {};
  const double sigma = thermal_sigma(p);
  const double hx = rng.normal();
  const double hy = rng.normal();
  const double hz = rng.normal();
  return {sigma * hx, sigma * hy, sigma * hz};
}

Vec3 llg_rhs(const Vec3& m, const Vec3& H_eff, const ParamSet& p) {
  const Vec3 torque = cross(m, H_eff);
  return p.gamma * torque - p.alpha * p.gamma * cross(m, torque);
}

Vec3 renormalize(const Vec3& m) {
  const double n = norm(m);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::domain_error("cannot renormalize a zero or non-finite magnetization");
  }
  return m * (1.0 / n);
}

}  // namespace irmen
