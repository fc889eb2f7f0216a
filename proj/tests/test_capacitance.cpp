#include <cmath>
#include <limits>

#include "doctest.h"
#include "ppact/capacitance.hpp"

using namespace ppact;

namespace {
const DeviceGeometry kGeom{};  // 600x300 um plates, 305 um rest gap
}

TEST_CASE("rest-gap capacitance values") {
  CHECK(ideal_capacitance(kGeom, kGeom.gap0) ==
        doctest::Approx(5.2253114754098356e-15).epsilon(1e-12).scale(0));
  CHECK(palmer_capacitance(kGeom, kGeom.gap0) ==
        doctest::Approx(1.5680726153842522e-14).epsilon(1e-12).scale(0));
  // fringing triples the rest-gap capacitance for this geometry
  CHECK(palmer_capacitance(kGeom, kGeom.gap0) / ideal_capacitance(kGeom, kGeom.gap0) ==
        doctest::Approx(3.000917022389108).epsilon(1e-12).scale(0));
}

TEST_CASE("fringing correction fades at small gaps") {
  const double f3um = palmer_capacitance(kGeom, 3e-6) / ideal_capacitance(kGeom, 3e-6);
  CHECK(f3um == doctest::Approx(1.0369479016726375).epsilon(1e-12).scale(0));

  double prev = f3um;
  for (double gap = 6e-6; gap <= kGeom.gap0; gap *= 2.0) {
    const double f = palmer_capacitance(kGeom, gap) / ideal_capacitance(kGeom, gap);
    CHECK(f > prev);  // correction grows with the gap
    CHECK(f >= 1.0);
    prev = f;
  }
}

TEST_CASE("palmer is symmetric in the plate dimensions") {
  DeviceGeometry swapped = kGeom;
  std::swap(swapped.width, swapped.length);
  for (double gap : {3e-6, 50e-6, 305e-6}) {
    CHECK(palmer_capacitance(kGeom, gap) ==
          doctest::Approx(palmer_capacitance(swapped, gap)).epsilon(1e-14));
  }
}

TEST_CASE("gap domain is enforced") {
  CHECK_THROWS_AS(ideal_capacitance(kGeom, 0.0), std::domain_error);
  CHECK_THROWS_AS(ideal_capacitance(kGeom, -1e-6), std::domain_error);
  CHECK_THROWS_AS(palmer_capacitance(kGeom, kGeom.gap0 * 1.01), std::domain_error);
  DeviceGeometry bad = kGeom;
  bad.width = 0.0;
  CHECK_THROWS_AS(ideal_capacitance(bad, 1e-6), std::domain_error);
}

TEST_CASE("substitute capacitor matches the reference at the rest gap") {
  const double c_ref = palmer_capacitance(kGeom, kGeom.gap0);
  CHECK(substitute_capacitance(kGeom, kGeom.gap0, c_ref) == c_ref);
  // halving the gap doubles the substitute value
  CHECK(substitute_capacitance(kGeom, kGeom.gap0 / 2.0, c_ref) ==
        doctest::Approx(2.0 * c_ref).epsilon(1e-14));
}

TEST_CASE("series split reconstructs the real model") {
  const auto model = palmer_model(kGeom);
  const double c_ref = model(kGeom.gap0);

  CHECK(!serial_capacitance(kGeom, kGeom.gap0, model, c_ref).has_value());

  for (int i = 1; i <= 400; ++i) {
    const double gap = kGeom.gap0 * std::pow(1e-3, i / 400.0);
    const auto d = decompose(kGeom, gap, model, c_ref);
    REQUIRE(d.serial.has_value());
    CHECK(*d.serial > 0.0);
    const double rebuilt = 1.0 / (1.0 / d.substitute + 1.0 / *d.serial);
    CHECK(std::abs(rebuilt - d.total) / d.total < 1e-10);
  }
}

TEST_CASE("a model below the substitute is rejected") {
  // ideal real model against the larger fringing reference: the substitute
  // equals the ideal curve scaled up threefold, so the remainder inverts
  const double c_ref_ideal = ideal_capacitance(kGeom, kGeom.gap0);
  CHECK_THROWS_AS(
      serial_capacitance(kGeom, kGeom.gap0 / 2.0, palmer_model(kGeom), c_ref_ideal),
      ModelInconsistencyError);
}

TEST_CASE("serial ratio limits") {
  const auto model = palmer_model(kGeom);
  const double c_ref = model(kGeom.gap0);
  CHECK(serial_ratio_at_gap(kGeom, kGeom.gap0, model, c_ref) == 0.0);
  CHECK(serial_ratio_at_gap(kGeom, kGeom.gap0 * 2.0, model, c_ref) == 0.0);
  CHECK(serial_ratio_at_gap(kGeom, 0.0, model, c_ref) == 0.0);
  CHECK(serial_ratio_at_gap(kGeom, -1e-6, model, c_ref) == 0.0);
  const double mid = serial_ratio_at_gap(kGeom, kGeom.gap0 / 2.0, model, c_ref);
  CHECK(mid > 0.0);
  CHECK(mid < 0.2302655135273621);  // below the sweep-wide worst case
}

TEST_CASE("serial sweep pins the worst-case ratio") {
  const auto model = palmer_model(kGeom);
  const double c_ref = model(kGeom.gap0);
  const auto sweep =
      sweep_serial(kGeom, model, c_ref, kGeom.gap0 * 1e-3, kGeom.gap0, 10000);

  REQUIRE(sweep.points.size() == 10000);
  CHECK(sweep.points.front().gap == kGeom.gap0);
  CHECK(!sweep.points.front().serial.has_value());
  CHECK(sweep.points.back().gap == doctest::Approx(kGeom.gap0 * 1e-3).epsilon(1e-14));

  CHECK(sweep.c_ser_min == doctest::Approx(6.809845692320403e-14).epsilon(1e-12).scale(0));
  CHECK(sweep.gap_at_min == doctest::Approx(1.094095709361006e-4).epsilon(1e-12).scale(0));
  CHECK(sweep.rho_s_bar == doctest::Approx(0.2302655135273621).epsilon(1e-12).scale(0));

  // interior minimum: the remainder grows toward both sweep ends
  CHECK(*sweep.points[1].serial > sweep.c_ser_min);
  CHECK(*sweep.points.back().serial > sweep.c_ser_min);
}

TEST_CASE("rho_s bound") {
  CHECK(rho_s_bound(1.0, 1.0) == 1.0);
  CHECK(rho_s_bound(1e-12, std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(rho_s_bound(1.474e-2, 6.47e-2) ==
        doctest::Approx(0.2278207109737249).epsilon(1e-12).scale(0));
  CHECK_THROWS_AS(rho_s_bound(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(rho_s_bound(1.0, -1.0), std::domain_error);
}

TEST_CASE("sweep argument checking") {
  const auto model = palmer_model(kGeom);
  const double c_ref = model(kGeom.gap0);
  CHECK_THROWS_AS(sweep_serial(kGeom, model, c_ref, 1e-6, kGeom.gap0, 1), std::domain_error);
  CHECK_THROWS_AS(sweep_serial(kGeom, model, c_ref, 0.0, kGeom.gap0, 10), std::domain_error);
  CHECK_THROWS_AS(sweep_serial(kGeom, model, c_ref, 2e-4, 1e-4, 10), std::domain_error);
  CHECK_THROWS_AS(sweep_serial(kGeom, model, c_ref, 1e-6, kGeom.gap0 * 2.0, 10),
                  std::domain_error);
}
