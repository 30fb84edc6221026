#include "pursuitsim/geo.hpp"

#include <algorithm>
#include <cmath>

namespace pursuitsim {

double normalize_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  double r = std::fmod(a, two_pi);
  if (r <= -M_PI) r += two_pi;
  if (r > M_PI) r -= two_pi;
  return r;
}

EcefVector geodetic_to_ecef(const GeodeticPosition& p) {
  const double c = std::cos(p.lat);
  return {p.radius * c * std::cos(p.lon), p.radius * c * std::sin(p.lon),
          p.radius * std::sin(p.lat)};
}

RotationMatrix enu_rotation(const GeodeticPosition& p) {
  const double sl = std::sin(p.lon), cl = std::cos(p.lon);
  const double sp = std::sin(p.lat), cp = std::cos(p.lat);
  Eigen::Matrix3d m;
  m << -sl, cl, 0.0,                 // east
      -cl * sp, -sl * sp, cp,        // north
      cl * cp, sl * cp, sp;          // up
  return RotationMatrix(m);
}

EnuVector ecef_to_enu(const EcefVector& v, const GeodeticPosition& origin) {
  return enu_rotation(origin).apply(v);
}

EcefVector enu_to_ecef(const EnuVector& v, const GeodeticPosition& origin) {
  return enu_rotation(origin).apply_inverse(v);
}

double central_angle(const GeodeticPosition& a, const GeodeticPosition& b) {
  // Vincenty form: accurate for both tiny and antipodal separations.
  const double dl = b.lon - a.lon;
  const double sa = std::sin(a.lat), ca = std::cos(a.lat);
  const double sb = std::sin(b.lat), cb = std::cos(b.lat);
  const double num = std::hypot(cb * std::sin(dl), ca * sb - sa * cb * std::cos(dl));
  const double den = sa * sb + ca * cb * std::cos(dl);
  return std::atan2(num, den);
}

double great_circle_distance(const GeodeticPosition& a, const GeodeticPosition& b) {
  return a.radius * central_angle(a, b);
}

double initial_bearing(const GeodeticPosition& a, const GeodeticPosition& b) {
  const double dl = b.lon - a.lon;
  // Standard navigation bearing (clockwise from north), then remapped so
  // east is 0 and counterclockwise is positive.
  const double y = std::sin(dl) * std::cos(b.lat);
  const double x = std::cos(a.lat) * std::sin(b.lat) -
                   std::sin(a.lat) * std::cos(b.lat) * std::cos(dl);
  const double from_north_cw = std::atan2(y, x);
  return normalize_angle(M_PI_2 - from_north_cw);
}

}  // namespace pursuitsim
