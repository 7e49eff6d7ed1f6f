#include <doctest.h>

#include <cmath>
#include <vector>

#include "irmen/circuit.hpp"
#include "irmen/errors.hpp"
#include "irmen/params.hpp"
#include "properties.hpp"

using namespace irmen;
using doctest::Approx;

TEST_CASE("IR resistance is linear and odd in m_y") {
  const ParamSet p;
  CHECK(ir_resistance(0.0, p) == 0.0);
  CHECK(ir_resistance(1.0, p) == Approx(1406.25));
  for (double m : {0.1, 0.37, 0.8}) {
    CHECK(ir_resistance(-m, p) == -ir_resistance(m, p));
    CHECK(ir_resistance(m, p) == Approx(m * ir_resistance(1.0, p)));
  }
}

TEST_CASE("drive current") {
  ParamSet p;
  CHECK(drive_current(p) == Approx(0.64e-3));
  p.V_drive = 0.0;
  CHECK(drive_current(p) == 0.0);
  ParamSet q;
  q.rho_IR = 20.0;
  CHECK(drive_current(q) == Approx(0.5 * drive_current(ParamSet{})));
  q.R_drive_extra = 1000.0;
  CHECK(drive_current(q) == Approx(1.0 / (3125.0 + 1000.0)));
}

TEST_CASE("IR voltage") {
  CHECK(ir_voltage(0.64e-3, 1406.25) == Approx(0.9));
  CHECK(ir_voltage(1e-3, 0.0) == 0.0);
  const ParamSet p;
  for (double m : {-0.9, -0.2, 0.3, 1.0}) {
    const double v = ir_voltage(drive_current(p), ir_resistance(m, p));
    CHECK(std::signbit(v) == std::signbit(m));
  }
  // Full readout chain spans a symmetric interval.
  CHECK(ir_voltage(drive_current(p), ir_resistance(-1.0, p)) ==
        -ir_voltage(drive_current(p), ir_resistance(1.0, p)));
}

TEST_CASE("gate node") {
  const ParamSet p;
  CHECK(gate_rhs(0.4, 0.4, 1406.25, p) == 0.0);
  CHECK(gate_rhs(0.0, 0.9, 1406.25, p) == Approx(6.4e12).epsilon(1e-3));
  // Zero source resistance falls back to the floor.
  CHECK(gate_rhs(0.2, 0.0, 0.0, p) == Approx(-0.2 / (kGateResistanceFloor * p.C_Y)));
  // Negative R_X uses its magnitude.
  CHECK(gate_rhs(0.0, -0.9, -1406.25, p) == Approx(-6.4e12).epsilon(1e-3));
}

TEST_CASE("synapse drive") {
  const ParamSet p;
  const std::vector<double> w(5, 1.0);
  SUBCASE("fixed point inside the rails") {
    const std::vector<double> Y(5, 0.4);
    CHECK(synapse_drive(Y, w, 0.65 * 0.4, p) == Approx(0.0).scale(1e3));
  }
  SUBCASE("rail clamp") {
    const std::vector<double> Y(5, p.V_DD / 0.65 * 2.0);
    CHECK(synapse_target(Y, w, p) == p.V_DD);
    CHECK(synapse_drive(Y, w, 0.0, p) == Approx(p.V_DD / (p.C_ME * p.R_V)));
    const std::vector<double> neg(5, -p.V_DD / 0.65 * 2.0);
    CHECK(synapse_target(neg, w, p) == -p.V_DD);
  }
  SUBCASE("all zero") {
    const std::vector<double> Y(5, 0.0);
    CHECK(synapse_drive(Y, w, 0.0, p) == 0.0);
  }
  SUBCASE("weights multiply inputs") {
    const std::vector<double> Y{0.2, 0.4};
    const std::vector<double> w2{2.0, 0.5};
    CHECK(synapse_target(Y, w2, p) == Approx(0.65 * (0.4 + 0.2) / 2.0));
  }
  SUBCASE("dimension errors") {
    const std::vector<double> Y(4, 0.1);
    CHECK_THROWS_AS(synapse_drive(Y, w, 0.0, p), DimensionError);
    CHECK_THROWS_AS(synapse_drive({}, {}, 0.0, p), DimensionError);
  }
}

TEST_CASE("synapse fixed point agrees with a root finder") {
  const auto v = props::synapse_fixed_point();
  INFO(v.detail);
  CHECK(v.pass);
}

TEST_CASE("node dynamics contract for constant inputs") {
  const ParamSet p;
  const std::vector<double> Y{0.3, -0.1, 0.2};
  const std::vector<double> w(3, 1.0);
  double a = -0.5, b = 0.5, ya = -1.0, yb = 1.0;
  const double dt = 0.1e-12;
  const double gap0 = std::abs(a - b), ygap0 = std::abs(ya - yb);
  for (int k = 0; k < 2000; ++k) {
    a += dt * synapse_drive(Y, w, a, p);
    b += dt * synapse_drive(Y, w, b, p);
    ya += dt * gate_rhs(ya, 0.5, 1406.25, p);
    yb += dt * gate_rhs(yb, 0.5, 1406.25, p);
  }
  CHECK(std::abs(a - b) < 1e-3 * gap0);
  CHECK(std::abs(ya - yb) < 1e-3 * ygap0);
  CHECK(a == Approx(synapse_target(Y, w, p)).epsilon(1e-3));
}

TEST_CASE("power model") {
  const ParamSet p;
  SUBCASE("drive power") {
    NodeSnapshot n;
    const PowerBreakdown pw = neuron_power(n, p);
    CHECK(pw.p_drive == Approx(0.64e-3));
  }
  SUBCASE("leak at the rails") {
    CHECK(synapse_leak_power(p.V_DD, p) ==
          Approx(2.0 * p.V_DD * p.I_leak0 * std::exp(-4.0)));
    CHECK(synapse_leak_power(-p.V_DD, p) / (2.0 * p.V_DD * p.I_leak0) == Approx(0.0183).epsilon(1e-2));
    CHECK(synapse_leak_power(0.0, p) == Approx(2.0 * p.V_DD * p.I_leak0));
  }
  SUBCASE("static nodes draw no charging power") {
    NodeSnapshot n{0.3, -0.4, 0.0, 0.0, 5};
    const PowerBreakdown pw = neuron_power(n, p);
    CHECK(pw.p_charge == 0.0);
    CHECK(pw.p_leak == Approx(5.0 * synapse_leak_power(-0.4, p)));
  }
  SUBCASE("charging power is rectified and parts sum to total") {
    NodeSnapshot n{-0.3, 0.2, 1e9, -4e10, 3};
    const PowerBreakdown pw = neuron_power(n, p);
    CHECK(pw.p_charge == Approx(p.C_ME * 0.3 * 1e9 + p.C_Y * 0.2 * 4e10));
    CHECK(pw.total == Approx(pw.p_drive + pw.p_leak + pw.p_charge));
  }
  SUBCASE("snapshot sums neurons") {
    const std::vector<NodeSnapshot> nodes{{0.1, 0.2, 1e8, 1e9, 5}, {-0.2, 0.4, -1e8, 0.0, 3}};
    const PowerBreakdown sum = power_snapshot(nodes, p);
    PowerBreakdown expect = neuron_power(nodes[0], p);
    expect += neuron_power(nodes[1], p);
    CHECK(sum == expect);
  }
}
