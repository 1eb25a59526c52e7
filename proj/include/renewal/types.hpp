#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace renewal {

// Points in R_+^d and directions. Array semantics throughout: products,
// ordering and min/max are componentwise.
using Vec = Eigen::ArrayXd;

// Lattice multi-indices in N^d; 0 components mark the vanishing-sum planes.
using Lattice = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;

// Coordinate product |x| = x^1 ... x^d (not the Euclidean norm).
template <typename Derived>
auto coord_prod(const Eigen::ArrayBase<Derived>& x) {
  return x.prod();
}

template <typename Derived>
bool all_nonnegative(const Eigen::ArrayBase<Derived>& x) {
  return (x >= 0).all();
}

template <typename Derived>
bool all_positive(const Eigen::ArrayBase<Derived>& x) {
  return (x > 0).all();
}

inline double euclidean_norm(const Vec& x) { return x.matrix().norm(); }

inline Vec unit_direction(const Vec& x) {
  const double n = euclidean_norm(x);
  if (n <= 0) throw std::domain_error("direction must be nonzero");
  return x / n;
}

// Dense storage would blow the configured memory budget; switch to the
// streaming backend.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation relies on coordinatewise monotonicity of S and is only valid for
// nonnegative summands.
class UnsupportedModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cone violates K\{0} subset of the open orthant (touches a coordinate
// hyperplane away from the origin).
class InvalidConeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace renewal
