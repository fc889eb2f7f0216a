#include <cmath>
#include <random>

#include "doctest.h"
#include "ppact/plant.hpp"

using namespace ppact;

TEST_CASE("normalization of the default device") {
  PhysicalParams phys;
  phys.damping = 6.324555320336759e-05;
  phys.resistance = 6051845282.42951;
  const auto p = normalize(phys);

  CHECK(p.omega0 == doctest::Approx(31622.776601683792).epsilon(1e-14));
  CHECK(p.c0 == doctest::Approx(5.2253114754098356e-15).epsilon(1e-14).scale(0));
  CHECK(p.v_pullin == doctest::Approx(2296.7136897909895).epsilon(1e-14));
  CHECK(p.q_pullin == doctest::Approx(8.000696265997147e-12).epsilon(1e-14).scale(0));
  CHECK(p.zeta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.rho_p == 0.0);
  CHECK(p.rho_s == 0.0);
}

TEST_CASE("parasitic ratios from capacitor values") {
  PhysicalParams phys;
  const double c0 = 5.2253114754098356e-15;
  phys.c_parallel = 2.0 * c0;
  phys.c_serial = c0 / 0.226;
  const auto p = normalize(phys);
  CHECK(p.rho_p == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(p.rho_s == doctest::Approx(0.226).epsilon(1e-12));
}

TEST_CASE("physical parameter validation") {
  PhysicalParams phys;
  phys.mass = 0.0;
  CHECK_THROWS_AS(normalize(phys), std::domain_error);
  phys = {};
  phys.c_serial = 0.0;
  CHECK_THROWS_AS(normalize(phys), std::domain_error);
  phys = {};
  phys.damping = -1.0;
  CHECK_THROWS_AS(normalize(phys), std::domain_error);
  CHECK_THROWS_AS(NormalizedParams::from_ratios(1.0, 0.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(NormalizedParams::from_ratios(1.0, 1.0, -0.1, 0.0), std::domain_error);
}

TEST_CASE("beta stays inside its travel-wide bounds") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uzeta(0.0, 5.0), ur(0.1, 10.0), urp(0.0, 5.0),
      urs(0.0, 2.0), ux(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const auto p =
        NormalizedParams::from_ratios(uzeta(rng), ur(rng), urp(rng), urs(rng));
    const double b = beta(ux(rng), p);
    const double lo = 1.0 / (p.r * (1.0 + p.rho_p * (1.0 + p.rho_s)));
    const double hi = 1.0 / p.r;
    CHECK(b >= lo * (1.0 - 1e-12));
    CHECK(b <= hi * (1.0 + 1e-12));
  }
}

TEST_CASE("beta endpoints attain the bounds") {
  const auto p = NormalizedParams::from_ratios(1.0, 2.0, 2.0, 0.226);
  CHECK(beta(0.0, p) == doctest::Approx(0.14484356894553882).epsilon(1e-14));
  CHECK(beta(1.0, p) == doctest::Approx(1.0 / (2.0 * (1.0 + 2.0 * 0.226))).epsilon(1e-14));
}

TEST_CASE("equilibrium family has zero derivative") {
  for (double rho_s : {0.0, 0.1, 0.226}) {
    for (double rho_p : {0.0, 1.0, 2.0}) {
      const auto p = NormalizedParams::from_ratios(0.7, 1.3, rho_p, rho_s);
      for (double x1 = 0.05; x1 <= 0.951; x1 += 0.1) {
        const State s{x1, 0.0, 3.0 * x1};
        const double u = holding_voltage(x1, rho_s);
        const auto d = rhs_x3_form(s, u, p);
        CHECK(std::abs(d.dx1) < 1e-12);
        CHECK(std::abs(d.dx2) < 1e-12);
        CHECK(std::abs(d.dx3) < 1e-12);
      }
    }
  }
}

TEST_CASE("state-space guard") {
  const auto p = NormalizedParams::from_ratios(1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(rhs_x3_form({-0.1, 0.0, 0.0}, 0.0, p), std::domain_error);
  CHECK_THROWS_AS(rhs_x3_form({1.1, 0.0, 0.0}, 0.0, p), std::domain_error);
  CHECK_THROWS_AS(rhs_x3_form({0.5, 0.0, -1e-9}, 0.0, p), std::domain_error);
  CHECK_NOTHROW(rhs_x3_form({0.0, -3.0, 0.0}, 0.0, p));
  CHECK_NOTHROW(rhs_x3_form({1.0, 0.0, 5.0}, 2.0, p));
}

TEST_CASE("charge form agrees with the squared form") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ux1(0.0, 1.0), ux2(-2.0, 2.0), uq(0.01, 2.0),
      uu(-2.0, 2.0);
  const auto p = NormalizedParams::from_ratios(3.0, 2.0, 2.0, 0.226);
  for (int i = 0; i < 1000; ++i) {
    const double x1 = ux1(rng), x2 = ux2(rng), q = uq(rng), u = uu(rng);
    const State s{x1, x2, q * q};
    const auto dx = rhs_x3_form(s, u, p);
    const auto dq = rhs_charge_form(x1, x2, q, u, p);
    CHECK(dx.dx1 == dq.dx1);
    CHECK(dx.dx2 == dq.dx2);
    // chain rule: d(q^2)/dt = 2 q dq/dt
    CHECK(dx.dx3 == doctest::Approx(2.0 * q * dq.dq).epsilon(1e-12));
  }
}

TEST_CASE("charge form is regular at zero charge") {
  const auto p = NormalizedParams::from_ratios(1.0, 1.0, 0.0, 0.0);
  const auto d = rhs_charge_form(0.0, 0.0, 0.0, 1.0, p);
  CHECK(d.dq == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // while the squared form cannot leave the uncharged manifold
  const auto dx = rhs_x3_form({0.0, 0.0, 0.0}, 1.0, p);
  CHECK(dx.dx3 == 0.0);
}

TEST_CASE("holding voltage curve") {
  CHECK(holding_voltage(0.1, 0.0) == doctest::Approx(0.7394254526319743).epsilon(1e-14));
  CHECK(holding_voltage(0.2, 0.0) == doctest::Approx(0.9295160030897801).epsilon(1e-14));
  CHECK(holding_voltage(0.5, 0.0) == doctest::Approx(0.9185586535436917).epsilon(1e-14));
  CHECK(holding_voltage(0.0, 0.0) == 0.0);
}

TEST_CASE("static pull-in point") {
  const auto ideal = static_pullin(0.0);
  CHECK(ideal.x1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ideal.u == doctest::Approx(1.0).epsilon(1e-14));

  const auto shifted = static_pullin(0.226);
  CHECK(shifted.x1 == doctest::Approx(0.4086666666666667).epsilon(1e-14));
  CHECK(shifted.u == doctest::Approx(1.3574870813381612).epsilon(1e-13));
  CHECK(shifted.x1 > ideal.x1);
  CHECK(shifted.u > ideal.u);

  // the closed form is the maximizer of the holding curve
  for (double rho_s : {0.0, 0.226}) {
    const auto pi = static_pullin(rho_s);
    CHECK(holding_voltage(pi.x1, rho_s) > holding_voltage(pi.x1 - 1e-3, rho_s));
    CHECK(holding_voltage(pi.x1, rho_s) > holding_voltage(pi.x1 + 1e-3, rho_s));
  }
  CHECK_THROWS_AS(static_pullin(-0.1), std::domain_error);
}

TEST_CASE("actuation diagnostics vanish at equilibrium") {
  for (double rho_s : {0.0, 0.226}) {
    const auto p = NormalizedParams::from_ratios(1.0, 2.0, 1.0, rho_s);
    for (double x1 : {0.1, 0.3, 0.6}) {
      const State s{x1, 0.0, 3.0 * x1};
      const auto d = actuation_diagnostics(s, p, holding_voltage(x1, rho_s));
      CHECK(d.q == doctest::Approx(std::sqrt(3.0 * x1)).epsilon(1e-14));
      CHECK(d.v_actuation == doctest::Approx((1.0 - x1) * d.q).epsilon(1e-14));
      CHECK(std::abs(d.i) < 1e-14);
      CHECK(d.beta == doctest::Approx(beta(x1, p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("gap-dependent serial ratio feeds the dynamics") {
  auto p = NormalizedParams::from_ratios(1.0, 1.0, 1.0, 0.5);
  p.rho_s_of_x1 = [](double x1) { return 0.1 * x1; };
  CHECK(p.serial_ratio(0.0) == 0.0);
  CHECK(p.serial_ratio(0.8) == doctest::Approx(0.08).epsilon(1e-14));
  // beta sees the override, not the constant
  CHECK(beta(0.5, p) ==
        doctest::Approx(1.0 / (1.0 + 1.0 * 0.5 + 1.0 * 0.05)).epsilon(1e-14));
  const auto with_fn = rhs_x3_form({0.5, 0.1, 0.3}, 0.4, p);
  p.rho_s_of_x1 = nullptr;
  p.rho_s = 0.05;
  const auto with_const = rhs_x3_form({0.5, 0.1, 0.3}, 0.4, p);
  CHECK(with_fn.dx3 == doctest::Approx(with_const.dx3).epsilon(1e-14));
}
