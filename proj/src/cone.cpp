#include "renewal/cone.hpp"

#include <cmath>
#include <numbers>

namespace renewal {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

ConeSpec ConeSpec::aperture(int d, double theta) {
  if (d < 1) throw std::invalid_argument("cone dimension must be >= 1");
  if (!(theta > 0.0 && theta <= 1.0))
    throw InvalidConeError(
        "aperture must be in (0,1]: theta <= 0 touches a coordinate "
        "hyperplane away from the origin");
  ConeSpec c;
  c.kind_ = ConeKind::Aperture;
  c.dim_ = d;
  c.theta_ = theta;
  return c;
}

ConeSpec ConeSpec::angle_interval(double theta1, double theta2) {
  if (!(theta1 > 0.0 && theta2 < kHalfPi && theta1 <= theta2))
    throw InvalidConeError(
        "angle interval must satisfy 0 < theta1 <= theta2 < pi/2");
  ConeSpec c;
  c.kind_ = ConeKind::AngleInterval;
  c.dim_ = 2;
  c.theta1_ = theta1;
  c.theta2_ = theta2;
  return c;
}

bool ConeSpec::contains(const Vec& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("point has wrong dimension for cone");
  if ((x < 0).any()) return false;
  if ((x == 0).all()) return true;  // the apex
  switch (kind_) {
    case ConeKind::Aperture:
      return x.minCoeff() >= theta_ * x.maxCoeff();
    case ConeKind::AngleInterval: {
      if (x[0] <= 0 || x[1] <= 0) return false;
      const double phi = std::atan2(x[1], x[0]);
      return phi >= theta1_ && phi <= theta2_;
    }
  }
  return false;
}

bool ConeSpec::contains(const Lattice& n) const {
  return contains(Vec(n.cast<double>()));
}

std::pair<double, double> ConeSpec::angle_range_2d() const {
  if (dim_ != 2)
    throw std::invalid_argument("angle range is defined for d = 2 cones");
  if (kind_ == ConeKind::AngleInterval) return {theta1_, theta2_};
  return {std::atan(theta_), std::atan(1.0 / theta_)};
}

bool ConeSpec::subset_of(const ConeSpec& other) const {
  if (dim_ != other.dim_) return false;
  if (dim_ == 2) {
    const auto [a1, a2] = angle_range_2d();
    const auto [b1, b2] = other.angle_range_2d();
    return a1 >= b1 && a2 <= b2;
  }
  // Only the aperture family exists beyond d = 2; larger theta = narrower.
  return theta_ >= other.theta_;
}

}  // namespace renewal
