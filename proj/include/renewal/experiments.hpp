#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "renewal/cone.hpp"
#include "renewal/distribution.hpp"
#include "renewal/field_sampler.hpp"
#include "renewal/types.hpp"

namespace renewal {

// Replicated samples of sqrt(t) ((r_t(u))^d - 1/(mu|u|)) with a one-sample
// KS verdict against the centred normal limit of variance
// sigma^2 / (mu^3 |u|^2). u must be Euclidean-unit with positive components;
// fewer than 50 replicates is refused (KS critical values unreliable).
struct CltResult {
  std::vector<double> samples;  // ordered by replicate id
  double limit_variance = 0;
  double ks_stat = 0;
  double ks_threshold = 0;
  bool degenerate = false;  // sigma = 0: all samples collapse at 0
  bool pass = false;
};

CltResult clt_sample(const SummandDistribution& dist, int d, const Vec& u,
                     double t, int replicates, std::uint64_t seed,
                     double alpha = 0.01);

// Running suprema of |S_n - mu|n|| / (sigma chi(|n|)) over the lattice box
// [1, horizon]^d, restricted to the cone and unrestricted, with the
// theoretical sectorial limit 1 and full-orthant limit sqrt(d) attached.
struct SectorialCheckpoint {
  std::int64_t m = 0;  // after finishing rows <= m
  double cone_sup = 0;
  double overall_sup = 0;
};

struct SectorialResult {
  double cone_sup = 0;
  double overall_sup = 0;
  double ratio = 0;  // overall / cone; NaN when cone_sup is 0
  double cone_target = 1.0;
  double overall_target = 0;  // sqrt(d)
  std::vector<SectorialCheckpoint> checkpoints;  // dyadic row indices
};

SectorialResult sectorial_lil_compare(const FieldSampler& sampler,
                                      const ConeSpec& cone,
                                      std::int64_t horizon);

// N_t / (t log_ext^{d-1} t) against the limit 1/(mu (d-1)!); the constant
// family also carries the exact divisor-count oracle.
struct NtRow {
  double t = 0;
  std::uint64_t n_t = 0;
  double ratio = 0;
  bool has_oracle = false;
  std::uint64_t oracle = 0;  // divisor-count value for constant summands
};

struct NtResult {
  std::vector<NtRow> rows;
  double limit = 0;  // 1/(mu (d-1)!)
};

NtResult n_t_slln_check(const FieldSampler& sampler,
                        std::span<const double> t_grid);

}  // namespace renewal
