#pragma once

#include <utility>

#include "renewal/types.hpp"

namespace renewal {

enum class ConeKind { Aperture, AngleInterval };

// Closed convex cone K with K\{0} inside the open orthant. Two families:
//   aperture(d, theta):       {x >= 0 : min_i x^i >= theta * max_i x^i},
//                             theta in (0,1]; contains the diagonal.
//   angle_interval(th1, th2): d = 2 only, directions with polar angle in
//                             [th1, th2] strictly inside (0, pi/2).
class ConeSpec {
 public:
  static ConeSpec aperture(int d, double theta);
  static ConeSpec angle_interval(double theta1, double theta2);

  bool contains(const Vec& x) const;
  bool contains(const Lattice& n) const;

  int dimension() const { return dim_; }
  ConeKind kind() const { return kind_; }
  double theta() const { return theta_; }
  std::pair<double, double> angles() const { return {theta1_, theta2_}; }

  // Tightest polar-angle range [a,b] of K's directions (d = 2 only); for the
  // aperture family this is [atan(theta), atan(1/theta)].
  std::pair<double, double> angle_range_2d() const;

  bool subset_of(const ConeSpec& other) const;

 private:
  ConeSpec() = default;
  ConeKind kind_ = ConeKind::Aperture;
  int dim_ = 0;
  double theta_ = 0;              // aperture
  double theta1_ = 0, theta2_ = 0;  // angle interval
};

}  // namespace renewal
