#pragma once

#include <Eigen/Dense>

namespace pursuitsim {

/// Mean spherical Earth radius [m].
inline constexpr double kEarthRadius = 6'371'000.0;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double a);

/// Position on (or above) the spherical Earth.
/// Angles in radians: lon in (-pi, pi], lat in [-pi/2, pi/2].
/// radius is the distance from the Earth's center [m].
struct GeodeticPosition {
  double lon = 0.0;
  double lat = 0.0;
  double radius = kEarthRadius;
};

/// Cartesian Earth-centered vector [m]. x pierces (lat 0, lon 0),
/// z the north pole, y completes the right-handed triad.
struct EcefVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static EcefVector from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Local tangent-plane vector [m]: east, north, up at some origin.
struct EnuVector {
  double e = 0.0;
  double n = 0.0;
  double u = 0.0;

  Eigen::Vector3d vec() const { return {e, n, u}; }
  static EnuVector from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Proper rotation taking ECEF coordinates into a local ENU frame.
class RotationMatrix {
 public:
  RotationMatrix() : m_(Eigen::Matrix3d::Identity()) {}
  explicit RotationMatrix(const Eigen::Matrix3d& m) : m_(m) {}

  const Eigen::Matrix3d& matrix() const { return m_; }

  EnuVector apply(const EcefVector& v) const { return EnuVector::from(m_ * v.vec()); }
  EcefVector apply_inverse(const EnuVector& v) const {
    return EcefVector::from(m_.transpose() * v.vec());
  }

 private:
  Eigen::Matrix3d m_;
};

/// Maps a geodetic position to its ECEF vector.
EcefVector geodetic_to_ecef(const GeodeticPosition& p);

/// Rotation from ECEF into the ENU frame anchored at p.
/// Rows of the matrix are the east, north and up unit vectors.
RotationMatrix enu_rotation(const GeodeticPosition& p);

/// Rotates a displacement vector from ECEF axes into the ENU frame at
/// `origin`. Callers convert absolute positions to displacements from the
/// frame origin first; no translation is applied here.
EnuVector ecef_to_enu(const EcefVector& v, const GeodeticPosition& origin);

/// Inverse rotation of ecef_to_enu (transpose).
EcefVector enu_to_ecef(const EnuVector& v, const GeodeticPosition& origin);

/// Central angle between two positions [rad].
double central_angle(const GeodeticPosition& a, const GeodeticPosition& b);

/// Great-circle surface distance [m] between two positions, measured on the
/// sphere of radius a.radius.
double great_circle_distance(const GeodeticPosition& a, const GeodeticPosition& b);

/// Initial great-circle bearing from `a` towards `b`, measured
/// counterclockwise from east [rad], in (-pi, pi].
double initial_bearing(const GeodeticPosition& a, const GeodeticPosition& b);

}  // namespace pursuitsim
