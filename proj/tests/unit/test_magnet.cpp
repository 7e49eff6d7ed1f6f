#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "irmen/magnet.hpp"
#include "irmen/params.hpp"
#include "irmen/rng.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace irmen;
using doctest::Approx;

namespace {

Vec3 rk4(const Vec3& m, double dt, const auto& f) {
  const Vec3 k1 = f(m);
  const Vec3 k2 = f(m + (dt / 2) * k1);
  const Vec3 k3 = f(m + (dt / 2) * k2);
  const Vec3 k4 = f(m + dt * k3);
  return m + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

TEST_CASE("anisotropy field projects on the easy axis") {
  const ParamSet p;
  CHECK(anisotropy_field({0, 1, 0}, p) == Vec3{0, 2400, 0});
  CHECK(anisotropy_field({1, 0, 0}, p) == Vec3{0, 0, 0});
  CHECK(anisotropy_field({0, -1, 0}, p) == Vec3{0, -2400, 0});
}

TEST_CASE("demag field of the 16x16x6 box") {
  const ParamSet p;
  const Vec3 hz = demag_field({0, 0, 1}, p);
  CHECK(hz.x == 0.0);
  CHECK(hz.z == Approx(-390.2).epsilon(1e-3));
  const Vec3 hy = demag_field({0, 1, 0}, p);
  CHECK(hy.y == Approx(-54.9).epsilon(1e-3));
  CHECK(demag_field({0, 0, 0}, p) == Vec3{0, 0, 0});
}

TEST_CASE("thermal field") {
  ParamSet p;
  SUBCASE("zero temperature gives zero without consuming randomness") {
    p.T = 0.0;
    RandomStream rng(4);
    const RandomStream before = rng;
    for (int i = 0; i < 10; ++i) CHECK(thermal_field(rng, p) == Vec3{});
    CHECK(rng == before);
  }
  SUBCASE("sigma at defaults") { CHECK(thermal_sigma(p) == Approx(350.0).epsilon(0.01)); }
  SUBCASE("deterministic for a given stream") {
    RandomStream a(9), b(9);
    for (int i = 0; i < 5; ++i) CHECK(thermal_field(a, p) == thermal_field(b, p));
  }
  SUBCASE("sample moments") {
    const auto v = props::thermal_moments(1000000);
    INFO(v.detail);
    CHECK(v.pass);
  }
}

TEST_CASE("llg right-hand side") {
  ParamSet p;
  SUBCASE("aligned field is a fixed point") {
    const Vec3 d = llg_rhs({0, 1, 0}, {0, 500, 0}, p);
    CHECK(norm(d) == 0.0);
  }
  SUBCASE("pure precession is perpendicular to m and H") {
    p.alpha = 0.0;
    const Vec3 m = renormalize({0.3, -0.5, 0.8});
    const Vec3 H{120.0, 40.0, -75.0};
    const Vec3 d = llg_rhs(m, H, p);
    CHECK(dot(d, m) == Approx(0.0).scale(1e9));
    CHECK(dot(d, H) == Approx(0.0).scale(1e11));
  }
  SUBCASE("magnitude for m along x, H along y") {
    p.alpha = 0.0;
    const Vec3 d = llg_rhs({1, 0, 0}, {0, 100, 0}, p);
    CHECK(d.x == 0.0);
    CHECK(d.y == 0.0);
    CHECK(std::abs(d.z) == Approx(1.76e9));
  }
}

TEST_CASE("renormalize") {
  CHECK(renormalize({0, 2, 0}) == Vec3{0, 1, 0});
  CHECK(renormalize({1, 0, 0}) == Vec3{1, 0, 0});
  const Vec3 r = renormalize({3, 4, 0});
  CHECK(r.x == Approx(0.6));
  CHECK(r.y == Approx(0.8));
  CHECK_THROWS_AS(renormalize({0, 0, 0}), std::domain_error);
}

TEST_CASE("pure precession conserves the angle to a static field") {
  ParamSet p;
  p.alpha = 0.0;
  const Vec3 H{0.0, 2000.0, 500.0};
  const Vec3 h = (1.0 / norm(H)) * H;
  Vec3 m = renormalize({0.6, 0.2, -0.3});
  const double angle0 = std::acos(dot(m, h));
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    m = renormalize(rk4(m, p.dt, [&](const Vec3& v) { return llg_rhs(v, H, p); }));
    worst = std::max(worst, std::abs(std::acos(dot(m, h)) - angle0));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("damping makes m.h nondecreasing") {
  const auto v = props::damping_monotonicity();
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("thermal equilibrium matches a Metropolis sampler") {
  const auto v = props::boltzmann_equilibrium();
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("reverse field along the easy axis switches as a step") {
  ParamSet p;
  p.T = 0.0;
  p.alpha = 0.1;
  const std::size_t steps = 20000;  // 10 ns
  const double h_sw = oracle::switching_field(p, 1000.0, 4000.0, 1.0, steps);
  INFO("switching field " << h_sw << " Oe");
  // Stiffness along x is H_K + M_s(N_x - N_y) and N_x = N_y for the square box.
  CHECK(h_sw == Approx(2400.0).epsilon(0.02));
  CHECK_FALSE(oracle::switches_under_reverse_field(0.97 * h_sw, p, steps));
  CHECK(oracle::switches_under_reverse_field(1.03 * h_sw, p, steps));
}
