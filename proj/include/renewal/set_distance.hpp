#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "renewal/cone.hpp"
#include "renewal/limit_set.hpp"
#include "renewal/types.hpp"

namespace renewal {

// Direction nets on S^{d-1} inside the open orthant: equal-angle midpoints
// for d = 2, a Fibonacci spiral filtered to the cone for d = 3, {1} for
// d = 1. All deterministic.
std::vector<Vec> direction_net_2d(double theta1, double theta2, int count);
std::vector<Vec> direction_net_3d(const ConeSpec& cone, int count);
std::vector<Vec> direction_net(int d, int count,
                               const std::optional<ConeSpec>& cone = {});

// Polar-angle interval of the directions whose H-boundary point (radius
// (level/|u|)^{1/d}) stays inside the window [0, W]^2.
std::pair<double, double> window_cone_2d(double level, double window);

// Default comparison window W = 4 (1/mu + |c|max)^{1/d} sqrt(d).
double default_window(double mu, double c_max, int d);

// One side of a set comparison: boundary samples plus a membership oracle,
// and optionally an exact point-to-set distance (closed-form sets). Callers
// compare upper sets whose clouds were sampled on the SAME direction net.
// For d = 2 the boundary must be angle-ordered: distances to a sampled side
// are measured against the polyline through consecutive points, which keeps
// the near-axis gaps from inflating the estimate. (d = 3 falls back to
// vertex distances.)
struct SetSample {
  std::vector<Vec> boundary;
  std::function<bool(const Vec&)> contains;
  std::function<double(const Vec&)> exact_distance;  // optional
};

SetSample limit_set_sample(const LimitSet& ls,
                           const std::vector<Vec>& directions);

struct HausdorffEstimate {
  double value = 0;
  Vec witness;                      // point attaining the max
  bool truncation_warning = false;  // witness sits on the window boundary
};

// Windowed Hausdorff from boundary clouds: points outside [0, W]^d are
// dropped from the sup, distances use membership first (0 inside the other
// set) and otherwise the nearest boundary sample of the other set.
HausdorffEstimate hausdorff_estimate(const SetSample& a, const SetSample& b,
                                     double window);

struct SymdiffEstimate {
  double value = 0;
  double error_bound = 0;
};

// Localized symmetric difference between upper sets from their radial
// functions: (1/d) int_{K cap S^{d-1}} |r_a(u)^d - r_b(u)^d| du. Directional
// midpoint quadrature; the error bound comes from one refinement step.
SymdiffEstimate symdiff_estimate(const std::function<double(const Vec&)>& r_a,
                                 const std::function<double(const Vec&)>& r_b,
                                 const ConeSpec& cone, int nodes = 128);

// Same integral from radial values precomputed on a direction net with the
// given per-direction surface weights.
double symdiff_from_radials(const std::vector<double>& r_a,
                            const std::vector<double>& r_b,
                            const std::vector<double>& weights, int d);

class RenewalSetView;  // renewal_set.hpp

// Localized symmetric difference between a scaled renewal set and a limit
// set over the cone window (valid for nonnegative summands: both are upper
// sets, so the measure reduces to the radial integral).
SymdiffEstimate symdiff_estimate(const RenewalSetView& view,
                                 const LimitSet& ls, const ConeSpec& cone,
                                 int nodes = 64, double radial_tol = -1.0);

}  // namespace renewal
