#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "renewal/cone.hpp"
#include "renewal/envelope.hpp"
#include "renewal/field_sampler.hpp"
#include "renewal/types.hpp"

namespace renewal {

inline std::vector<double> dyadic_grid(int j_min, int j_max) {
  std::vector<double> g;
  for (int j = j_min; j <= j_max; ++j) g.push_back(std::ldexp(1.0, j));
  return g;
}

struct TrajectoryOptions {
  std::vector<double> t_grid;        // ascending thresholds (dyadic by default)
  std::optional<ConeSpec> cone;      // LIL cone K; default aperture(d, 0.5)
  int directions = 64;
  double window = -1;                // <= 0: default_window from the envelopes
  double beta = 1.5;                 // SLLN envelope exponent
  double eps = 1.0;                  // SLLN epsilon
  double gamma_mult = 10.0;          // LIL bands at gamma = +-mult mu^{-3/2}
  double radial_tol_rel = 1e-6;      // bisection tolerance, relative to the
                                     // expected crossing (mu|u|)^{-1/d}
  int spot_checks = 32;              // membership spot checks per t
  std::uint64_t spot_seed = 0x5707c3ecull;
};

// One row per threshold; the lil CSV columns map onto rho_h, rho_tri, phi_t,
// the two ratios, running_sup_h and the two lil flags.
struct TrajectoryRow {
  double t = 0;
  double rho_h = 0, rho_tri = 0;
  double phi_t = 0;
  double ratio_h = 0, ratio_tri = 0;
  double running_sup_h = 0, running_sup_tri = 0;
  double sqrt_t_rho_h = 0, sqrt_t_rho_tri = 0;
  double running_min_h = 0, running_min_tri = 0;
  bool slln_subset_ok = true, slln_superset_ok = true;
  double slln_margin_subset = 0, slln_margin_superset = 0;
  bool lil_subset_ok = true, lil_superset_ok = true;
  bool hausdorff_truncated = false;
};

// One realization of the field evaluated on a threshold grid with a shared
// direction net; the per-(t, direction) radial values are retained so the
// inclusion checks can be re-derived for other envelopes.
struct TrajectoryRecord {
  int d = 0;
  double mu = 0, sigma = 0;  // sigma may be +inf (heavy tails)
  bool degenerate_sigma = false;
  bool wichura_ok = true;
  std::vector<double> ts;
  std::vector<Vec> directions;
  std::vector<double> dir_prods;   // |u| per direction
  std::vector<char> in_cone;
  std::vector<double> cone_weights;  // surface weights, 0 outside the cone
  Eigen::MatrixXd radials;           // ts.size() x directions.size()
  std::vector<TrajectoryRow> rows;
  std::optional<ConeSpec> cone;
  double window = 0;
  double beta = 0, eps = 0, gamma_mult = 0;
  double radial_slack = 0;  // guard band used by the inclusion flags
  double lil_const_h = 0;   // d^{-1/2} sigma mu^{-1/2 - 1/d}
  double lil_const_tri = 0;  // sigma mu^{-3/2} L_K (nonnegative-summand form)
};

TrajectoryRecord run_trajectory(const FieldSampler& sampler,
                                const TrajectoryOptions& options);

struct InclusionReport {
  std::vector<double> ts;
  // For the SLLN-style checks: subset_ok tracks the left inclusion
  // H(c) in t^{-1/d} M_t and superset_ok the right one M in H(-c).
  // For lil_envelope_check: subset_ok tracks M in H_K(c) and superset_ok
  // the reverse, matching the two sides of the envelope theorem.
  std::vector<char> subset_ok;    // per t
  std::vector<char> superset_ok;  // per t
  // Largest t with a violation on either side; NaN when all pass.
  double last_violation_t = std::numeric_limits<double>::quiet_NaN();
  // Both inclusions hold at every grid point >= t_from.
  bool clean_from(double t_from) const;
  bool subset_clean_from(double t_from) const;
  bool superset_clean_from(double t_from) const;
};

// Inversion-theorem inclusion checker with pluggable envelope p:
// H(eps p(t)/t) subset of t^{-1/d} M_t subset of H(-eps p(t)/t), from the
// stored radials.
InclusionReport inclusion_check(const TrajectoryRecord& record,
                                const EnvelopeFn& p, double eps);

// Marcinkiewicz-Zygmund SLLN bands p(t) = t^{1/beta}.
InclusionReport slln_inclusion_check(const TrajectoryRecord& record,
                                     double beta, double eps);

// Sectorial variant: the inclusions are required only inside the record's
// cone, which is the regime where a bare beta moment (no logarithmic factor)
// already suffices.
InclusionReport sectorial_inclusion_check(const TrajectoryRecord& record,
                                          const EnvelopeFn& p, double eps);

// LIL bands against H_K(gamma sigma phi(t)): subset flags for the given
// gamma (meaningful for gamma < 0), superset flags for +|gamma| semantics
// per row (the record rows carry the engine's +-gamma_mult pair).
InclusionReport lil_envelope_check(const TrajectoryRecord& record,
                                   double gamma);

struct MetricLilReport {
  double sup_ratio_h = 0, sup_ratio_tri = 0;
  double const_h = 0, const_tri = 0;
};
MetricLilReport metric_lil_stats(const TrajectoryRecord& record);

struct LiminfReport {
  std::vector<double> ts;
  std::vector<double> running_min_h, running_min_tri;
  double final_min_h = 0, final_min_tri = 0;
  // Running minimum of sqrt(t) rho_H over thresholds <= t.
  double running_min_h_at(double t) const;
};
LiminfReport liminf_stats(const TrajectoryRecord& record);

}  // namespace renewal
