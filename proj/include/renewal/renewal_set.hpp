#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "renewal/multisum.hpp"
#include "renewal/types.hpp"

namespace renewal {

struct RadialSample {
  Vec direction;     // as queried
  double value = 0;  // crossing multiple a: S >= t at a, S < t at a - tol
  double residual = 0;  // |S at the crossing - t|
};

// Lazily evaluated M_t = {x : S_x >= t} for one threshold t, scaled by
// t^{-1/d}. Dense views wrap a prefix grid (any cells, which lets tests plant
// fixtures); streaming views regenerate xi on demand and have O(1) state.
class RenewalSetView {
 public:
  // Streaming backend.
  RenewalSetView(double t, FieldSampler sampler);
  // Dense backend; mu_hint seeds the radial bracket (pass the distribution
  // mean, or a rough scale for fixture grids).
  RenewalSetView(double t, std::shared_ptr<const PrefixGrid> grid,
                 double mu_hint, bool nonnegative = true);

  double t() const { return t_; }
  int dimension() const { return source_->dimension(); }
  double scale() const { return scale_; }  // t^{-1/d}
  double mu_hint() const { return mu_hint_; }

  // Unscaled membership: S_x >= t.
  bool contains(const Vec& x) const;
  // Membership of x in t^{-1/d} M_t, i.e. S_{t^{1/d} x} >= t.
  bool contains_scaled(const Vec& x) const;
  double sum_at(const Vec& x) const { return interpolate(*source_, x); }

  // Radial function of the scaled set along u (open orthant): bisection on
  // the nondecreasing a -> S_{t^{1/d} a u}. tol <= 0 picks the default
  // 1e-9 (mu |u|)^{-1/d}; hint (if given) brackets around a known nearby
  // crossing, e.g. the previous direction's value.
  RadialSample radial(const Vec& u, double tol = -1.0,
                      std::optional<double> hint = {}) const;

  std::vector<Vec> boundary_cloud(const std::vector<Vec>& directions,
                                  double tol = -1.0) const;

 private:
  double t_;
  double scale_;
  double mu_hint_;
  bool nonneg_;
  std::shared_ptr<const SumSource> source_;
};

// N_t = card(N^d \ M_t): exact count of lattice points with S_n < t.
// d = 2 uses the streaming staircase; other d fall back to a dense
// enumeration sized for small t.
std::uint64_t deficiency_count(const FieldSampler& sampler, double t);

// T_k = card{n in N^d : |n| <= k}. d = 2 via the hyperbola identity,
// d >= 3 via T^{(d)}_k = sum_i T^{(d-1)}_{floor(k/i)} over floor blocks.
std::uint64_t divisor_count(int d, std::uint64_t k);

}  // namespace renewal
