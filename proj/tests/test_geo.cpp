#include <doctest.h>

#include <cmath>
#include <random>

#include "pursuitsim/geo.hpp"

using namespace pursuitsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

GeodeticPosition deg(double lon, double lat, double radius = kEarthRadius) {
  return {lon * kPi / 180.0, lat * kPi / 180.0, radius};
}

}  // namespace

TEST_CASE("normalize_angle wraps into (-pi, pi]") {
  CHECK(normalize_angle(0.0) == doctest::Approx(0.0));
  CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(2 * kPi + 0.25) == doctest::Approx(0.25));
  CHECK(normalize_angle(-7.5 * kPi) == doctest::Approx(0.5 * kPi));
}

TEST_CASE("geodetic_to_ecef axis alignment") {
  const EcefVector a = geodetic_to_ecef({0.0, 0.0, kEarthRadius});
  CHECK(a.x == doctest::Approx(kEarthRadius));
  CHECK(a.y == doctest::Approx(0.0));
  CHECK(a.z == doctest::Approx(0.0));

  const EcefVector b = geodetic_to_ecef({kPi / 2, 0.0, kEarthRadius});
  CHECK(std::abs(b.x) < 1e-6);  // cos(pi/2) rounding, sub-micron on the sphere
  CHECK(b.y == doctest::Approx(kEarthRadius));

  const EcefVector c = geodetic_to_ecef({0.0, kPi / 2, kEarthRadius});
  CHECK(c.z == doctest::Approx(kEarthRadius));
  CHECK(std::hypot(c.x, c.y) < 1e-6);
}

TEST_CASE("enu_rotation fixed substitutions") {
  const Eigen::Matrix3d m0 = enu_rotation({0.0, 0.0, kEarthRadius}).matrix();
  Eigen::Matrix3d want0;
  want0 << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK((m0 - want0).cwiseAbs().maxCoeff() < 1e-15);

  const Eigen::Matrix3d m1 = enu_rotation({kPi / 2, 0.0, kEarthRadius}).matrix();
  Eigen::Matrix3d want1;
  want1 << -1, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK((m1 - want1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("enu_rotation randomized orthonormality and determinant") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> lon(-kPi, kPi);
  std::uniform_real_distribution<double> lat(-kPi / 2, kPi / 2);
  for (int i = 0; i < 2000; ++i) {
    const GeodeticPosition p{lon(rng), lat(rng), kEarthRadius};
    const Eigen::Matrix3d m = enu_rotation(p).matrix();
    CHECK((m * m.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-12));

    // east row is tangent: orthogonal to the radial direction
    const Eigen::Vector3d up = geodetic_to_ecef(p).vec().normalized();
    CHECK(std::abs(m.row(0).dot(up)) < 1e-12);
    // radial unit vector maps to local Up
    const EnuVector local = ecef_to_enu(EcefVector::from(up), p);
    CHECK(std::abs(local.e) < 1e-12);
    CHECK(std::abs(local.n) < 1e-12);
    CHECK(local.u == doctest::Approx(1.0));
  }
}

TEST_CASE("ecef/enu round trips preserve vectors and norms") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lon(-kPi, kPi);
  std::uniform_real_distribution<double> lat(-kPi / 2, kPi / 2);
  std::uniform_real_distribution<double> comp(-2e6, 2e6);
  for (int i = 0; i < 2000; ++i) {
    const GeodeticPosition origin{lon(rng), lat(rng), kEarthRadius};
    const EcefVector v{comp(rng), comp(rng), comp(rng)};
    const EnuVector local = ecef_to_enu(v, origin);
    CHECK(local.vec().norm() == doctest::Approx(v.vec().norm()).epsilon(1e-9));
    const EcefVector back = enu_to_ecef(local, origin);
    CHECK((back.vec() - v.vec()).norm() <= 1e-9 * std::max(1.0, v.vec().norm()));
  }

  const EnuVector zero = ecef_to_enu({0, 0, 0}, deg(12.0, -34.0));
  CHECK(zero.vec().norm() == 0.0);
  const EcefVector up_at_origin = enu_to_ecef({0, 0, 1}, {0.0, 0.0, kEarthRadius});
  CHECK(up_at_origin.x == doctest::Approx(1.0));
  CHECK(std::abs(up_at_origin.y) < 1e-15);
  CHECK(std::abs(up_at_origin.z) < 1e-15);
}

TEST_CASE("geodetic_to_ecef preserves radius") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lon(-kPi, kPi);
  std::uniform_real_distribution<double> lat(-kPi / 2, kPi / 2);
  std::uniform_real_distribution<double> rad(1e3, 1e8);
  for (int i = 0; i < 1000; ++i) {
    const GeodeticPosition p{lon(rng), lat(rng), rad(rng)};
    CHECK(geodetic_to_ecef(p).vec().norm() ==
          doctest::Approx(p.radius).epsilon(1e-9));
  }
}

TEST_CASE("great_circle_distance haversine cross-check") {
  // values computed independently with the haversine formula
  CHECK(great_circle_distance(deg(-48.0, 41.0), deg(-52.5, 44.25)) ==
        doctest::Approx(515744.755629).epsilon(1e-9));
  // antimeridian crossing
  CHECK(great_circle_distance(deg(179.5, -20.0), deg(-179.25, -20.5)) ==
        doctest::Approx(141759.286186).epsilon(1e-9));
  CHECK(great_circle_distance(deg(10.0, 25.0), deg(10.0, 25.0)) == 0.0);
  // one degree of equatorial arc
  CHECK(great_circle_distance(deg(0.0, 0.0), deg(1.0, 0.0)) ==
        doctest::Approx(111194.926645).epsilon(1e-9));
}

TEST_CASE("initial_bearing east-ccw convention") {
  // forward azimuth cross-checked against the spherical bearing formula
  CHECK(initial_bearing(deg(-48.0, 41.0), deg(-52.5, 44.25)) ==
        doctest::Approx(2.339220342975).epsilon(1e-9));
  CHECK(initial_bearing(deg(179.5, -20.0), deg(-179.25, -20.5)) ==
        doctest::Approx(-0.406775733960).epsilon(1e-9));
  // due east along the equator
  CHECK(initial_bearing(deg(0.0, 0.0), deg(5.0, 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // due north
  CHECK(initial_bearing(deg(7.0, 10.0), deg(7.0, 20.0)) ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("central_angle matches distance over radius") {
  const GeodeticPosition a = deg(-48.0, 41.0);
  const GeodeticPosition b = deg(-52.5, 44.25);
  CHECK(central_angle(a, b) ==
        doctest::Approx(great_circle_distance(a, b) / kEarthRadius));
}
