#pragma once

#include <cstdint>

#include "renewal/cone.hpp"
#include "renewal/types.hpp"

namespace renewal {

// H(c) = {x >= 0 : x^1...x^d >= 1/mu + c}: closed, convex, decreasing in c;
// H(0) is the a.s. limit of the scaled renewal sets.
class LimitSet {
 public:
  LimitSet(double mu, double c = 0.0);

  double mu() const { return mu_; }
  double c() const { return c_; }
  double level() const { return 1.0 / mu_ + c_; }

  bool contains(const Vec& x) const;
  // Radial function ((1/mu + c)/|u|)^{1/d} for u in the open orthant.
  double radial(const Vec& u) const;

 private:
  double mu_, c_;
};

double h_radial(const LimitSet& ls, const Vec& u);

// H_K(c): |x| >= 1/mu + c inside the cone, |x| >= 1/mu + c*sqrt(d) outside.
// A nonpositive level makes that branch vacuous (the whole orthant slice
// belongs to the set, radial 0), which happens for very negative LIL
// envelopes at small t.
class ConeLimitSet {
 public:
  ConeLimitSet(ConeSpec cone, double mu, double c);

  const ConeSpec& cone() const { return cone_; }
  double mu() const { return mu_; }
  double c() const { return c_; }
  double level_inside() const { return 1.0 / mu_ + c_; }
  double level_outside() const;

  bool contains(const Vec& x) const;
  double radial(const Vec& u) const;

 private:
  ConeSpec cone_;
  double mu_, c_;
};

// Closed-form Hausdorff distance between H(c1) and H(c2):
// sqrt(d) ((1/mu + c2)^{1/d} - (1/mu + c1)^{1/d}), for -1/mu < c1 <= c2.
double hausdorff_closed(double c1, double c2, double mu, int d);

// Closed-form localized symmetric difference over a cone: L_K (c2 - c1).
double symdiff_closed(const ConeSpec& cone, double c1, double c2, double mu);

// Cone constant L_K = (1/d) int_{K cap S^{d-1}} |u|^{-1} du.
enum class LkMethod { Analytic2d, Quadrature, MonteCarlo };

struct LkResult {
  double value = 0;
  double error_bound = 0;
  bool converged = true;  // false = budget exhausted before tolerance
};

LkResult l_k(const ConeSpec& cone, LkMethod method,
             std::size_t budget = 1u << 22, double tol = 1e-9,
             std::uint64_t mc_seed = 0x5eed5eed5eedULL);

// Exact L_K for a d = 2 angle interval: (1/2) log(tan th2 / tan th1).
double l_k_analytic(double theta1, double theta2);

// Euclidean distance from x >= 0 to H(c); 0 inside, otherwise the projection
// onto the surface |y| = level via a one-parameter Lagrange/Newton solve with
// a dense ray-search fallback.
struct Projection {
  Vec point;
  double distance = 0;
  bool newton_converged = true;
};

Projection project_to_limit(const Vec& x, const LimitSet& ls);
double dist_to_limit(const Vec& x, const LimitSet& ls);

}  // namespace renewal
