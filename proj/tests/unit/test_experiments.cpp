#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "renewal/experiments.hpp"
#include "renewal/renewal_set.hpp"
#include "renewal/set_distance.hpp"
#include "renewal/trajectory.hpp"

using namespace renewal;

namespace {
Vec pt(std::initializer_list<double> v) {
  Vec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}
const Vec kDiag = pt({1.0, 1.0}) / std::sqrt(2.0);
}  // namespace

TEST_CASE("clt_sample validation") {
  const auto exp1 = SummandDistribution::exponential(1.0);
  CHECK_THROWS_AS(clt_sample(exp1, 2, kDiag, 256.0, 10, 1),
                  std::invalid_argument);  // M < 50 refusal
  CHECK_THROWS_AS(clt_sample(exp1, 2, pt({1.0, 1.0}), 256.0, 100, 1),
                  std::invalid_argument);  // not Euclidean-unit
  CHECK_THROWS_AS(clt_sample(exp1, 2, Vec(-kDiag), 256.0, 100, 1),
                  std::domain_error);
}

TEST_CASE("clt limit variance pinned for exponential(1) on the diagonal") {
  // sigma^2/(mu^3 |u|^2) with |u| = 1/2
  const auto res = clt_sample(SummandDistribution::exponential(1.0), 2, kDiag,
                              64.0, 50, 3);
  CHECK(res.limit_variance == doctest::Approx(4.0));
  CHECK(res.samples.size() == 50);
  CHECK_FALSE(res.degenerate);
}

TEST_CASE("clt degenerate summands are flagged") {
  const auto res = clt_sample(SummandDistribution::constant(1.0), 2, kDiag,
                              256.0, 60, 5);
  CHECK(res.degenerate);
  CHECK_FALSE(res.pass);
  for (double s : res.samples) CHECK(std::abs(s) < 1e-5);
}

TEST_CASE("clt replicates are deterministic in the seed") {
  const auto exp1 = SummandDistribution::exponential(1.0);
  const auto a = clt_sample(exp1, 2, kDiag, 256.0, 60, 42);
  const auto b = clt_sample(exp1, 2, kDiag, 256.0, 60, 42);
  CHECK(a.samples == b.samples);
  CHECK(a.ks_stat == b.ks_stat);
}

TEST_CASE("sectorial LIL comparison") {
  const auto cone = ConeSpec::aperture(2, 0.5);
  SUBCASE("deterministic summands give zero suprema") {
    const FieldSampler s(1, SummandDistribution::constant(2.0), 2);
    const auto res = sectorial_lil_compare(s, cone, 64);
    CHECK(res.cone_sup == 0.0);
    CHECK(res.overall_sup == 0.0);
  }
  SUBCASE("cone supremum never exceeds the overall supremum") {
    const FieldSampler s(9, SummandDistribution::exponential(1.0), 2);
    const auto res = sectorial_lil_compare(s, cone, 256);
    CHECK(res.cone_sup > 0.0);
    CHECK(res.cone_sup <= res.overall_sup);
    CHECK(res.ratio >= 1.0);
    CHECK(res.overall_target == doctest::Approx(std::sqrt(2.0)));
    // checkpoints are running suprema
    double prev_c = 0, prev_o = 0;
    for (const auto& cp : res.checkpoints) {
      CHECK(cp.cone_sup >= prev_c);
      CHECK(cp.overall_sup >= prev_o);
      prev_c = cp.cone_sup;
      prev_o = cp.overall_sup;
    }
  }
  SUBCASE("infinite variance is refused") {
    const FieldSampler s(2, SummandDistribution::shifted_pareto(1.5, 1.0), 2);
    CHECK_THROWS_AS(sectorial_lil_compare(s, cone, 32),
                    std::invalid_argument);
  }
  SUBCASE("d = 3 dense path runs") {
    const FieldSampler s(3, SummandDistribution::exponential(1.0), 3);
    const auto res =
        sectorial_lil_compare(s, ConeSpec::aperture(3, 0.5), 12);
    CHECK(res.cone_sup <= res.overall_sup);
  }
}

TEST_CASE("N_t ratios approach 1/(mu (d-1)!)") {
  SUBCASE("d = 1 unit summands: N_t = ceil(t) - 1") {
    const FieldSampler s(0, SummandDistribution::constant(1.0), 1);
    const std::vector<double> grid = {10.0, 100.0, 1000.0};
    const auto res = n_t_slln_check(s, grid);
    CHECK(res.limit == doctest::Approx(1.0));
    CHECK(res.rows[0].n_t == 9);
    CHECK(res.rows[2].n_t == 999);
    CHECK(res.rows[2].ratio == doctest::Approx(0.999));
  }
  SUBCASE("d = 2 unit summands match the divisor oracle") {
    const FieldSampler s(0, SummandDistribution::constant(1.0), 2);
    const std::vector<double> grid = {3.5, 100.0, 10000.0};
    const auto res = n_t_slln_check(s, grid);
    for (const auto& row : res.rows) {
      REQUIRE(row.has_oracle);
      CHECK(row.n_t == row.oracle);
    }
    CHECK(res.rows[0].n_t == 5);
  }
  SUBCASE("exponential d = 2 lands in a loose band at t = 1e4") {
    const FieldSampler s(8, SummandDistribution::exponential(1.0), 2);
    const std::vector<double> grid = {1e4};
    const auto res = n_t_slln_check(s, grid);
    CHECK(res.rows[0].ratio > 0.5);
    CHECK(res.rows[0].ratio < 1.5);
  }
}

TEST_CASE("trajectory engine on deterministic summands: exact inversion") {
  const FieldSampler s(0, SummandDistribution::constant(1.0), 2);
  TrajectoryOptions opt;
  opt.t_grid = dyadic_grid(4, 8);
  opt.directions = 24;
  const auto rec = run_trajectory(s, opt);
  REQUIRE(rec.rows.size() == 5);
  CHECK(rec.degenerate_sigma);
  for (const auto& row : rec.rows) {
    // t^{-1/d} M_t = H exactly: every inclusion holds at every t and eps.
    CHECK(row.slln_subset_ok);
    CHECK(row.slln_superset_ok);
    CHECK(row.lil_subset_ok);
    CHECK(row.lil_superset_ok);
    CHECK(row.rho_h < 1e-4);
    CHECK(row.rho_tri < 1e-4);
    CHECK(row.sqrt_t_rho_h < 0.02);
  }
  // the inversion contract re-derived for several eps values
  for (double eps : {0.01, 0.1, 1.0, 10.0}) {
    const auto rep = inclusion_check(rec, EnvelopeFn::power(1.5), eps);
    CHECK(rep.clean_from(0.0));
    CHECK(std::isnan(rep.last_violation_t));
  }
}

TEST_CASE("trajectory engine on exponential summands") {
  const FieldSampler s(4242, SummandDistribution::exponential(1.0), 2);
  TrajectoryOptions opt;
  opt.t_grid = dyadic_grid(6, 10);
  opt.directions = 32;
  opt.cone = ConeSpec::angle_interval(std::numbers::pi / 6,
                                      std::numbers::pi / 3);
  const auto rec = run_trajectory(s, opt);

  SUBCASE("constants attached to the record") {
    CHECK(rec.lil_const_h == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(rec.lil_const_tri ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-6));
  }
  SUBCASE("rows carry coherent running statistics") {
    double sup = 0, minv = 1e300;
    for (const auto& row : rec.rows) {
      sup = std::max(sup, row.ratio_h);
      minv = std::min(minv, row.sqrt_t_rho_h);
      CHECK(row.running_sup_h == doctest::Approx(sup));
      CHECK(row.running_min_h == doctest::Approx(minv));
      CHECK(row.rho_h > 0.0);
      CHECK(row.rho_tri >= 0.0);
      CHECK(row.phi_t == doctest::Approx(std::sqrt(2.0 * loglog_ext(row.t) / row.t)));
    }
  }
  SUBCASE("metric and liminf reports mirror the rows") {
    const auto m = metric_lil_stats(rec);
    CHECK(m.sup_ratio_h == doctest::Approx(rec.rows.back().running_sup_h));
    const auto l = liminf_stats(rec);
    CHECK(l.final_min_h == doctest::Approx(rec.rows.back().running_min_h));
    CHECK(l.running_min_h_at(rec.ts.back()) == doctest::Approx(l.final_min_h));
  }
  SUBCASE("generous LIL bands hold on this run") {
    const double gamma = 10.0;  // mu = 1
    const auto neg = lil_envelope_check(rec, -gamma);
    const auto pos = lil_envelope_check(rec, +gamma);
    CHECK(neg.subset_clean_from(rec.ts.front()));
    CHECK(pos.superset_clean_from(rec.ts.front()));
  }
}

TEST_CASE("d = 1 trajectory degenerates to interval endpoints") {
  const FieldSampler s(3, SummandDistribution::exponential(2.0), 1);
  TrajectoryOptions opt;
  opt.t_grid = dyadic_grid(6, 10);
  opt.cone = ConeSpec::aperture(1, 1.0);
  const auto rec = run_trajectory(s, opt);
  REQUIRE(rec.directions.size() == 1);
  for (const auto& row : rec.rows) {
    // rho_H and rho_tri both reduce to |r_t - 1/mu| on the half-line.
    CHECK(row.rho_h == doctest::Approx(row.rho_tri).epsilon(1e-9));
    CHECK(row.rho_h >= 0.0);
  }
  // d^{-1/2} sigma mu^{-3/2} with sigma = mu = 1/2
  CHECK(rec.lil_const_h == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("symmetric difference between a renewal view and its limit set") {
  // Deterministic summands: the sets coincide, the measure vanishes.
  const FieldSampler c2(0, SummandDistribution::constant(2.0), 2);
  const RenewalSetView view(512.0, c2);
  const auto cone = ConeSpec::angle_interval(std::numbers::pi / 6,
                                             std::numbers::pi / 3);
  const auto est = symdiff_estimate(view, LimitSet(2.0, 0.0), cone, 32);
  CHECK(est.value < 1e-6);
}

TEST_CASE("heavy-tail summands: sectorial inclusions under a bare beta moment") {
  // Infinite variance (tail index 1.6): the LIL machinery is vacuous, but
  // the cone-restricted inclusions with p(t) = t^{1/beta}, beta < 1.6, are
  // still meaningful and are implied by the unrestricted flags.
  const FieldSampler s(6, SummandDistribution::shifted_pareto(1.6, 1.0), 2);
  TrajectoryOptions opt;
  opt.t_grid = dyadic_grid(6, 9);
  opt.directions = 24;
  const auto rec = run_trajectory(s, opt);
  CHECK_FALSE(rec.wichura_ok);
  CHECK(!std::isfinite(rec.sigma));
  CHECK_THROWS_AS(lil_envelope_check(rec, -10.0), std::invalid_argument);

  const auto p = EnvelopeFn::power(1.4);
  for (double eps : {0.5, 1.0, 2.0}) {
    const auto full = inclusion_check(rec, p, eps);
    const auto sect = sectorial_inclusion_check(rec, p, eps);
    for (std::size_t i = 0; i < rec.ts.size(); ++i) {
      // restricting to the cone can only remove violations
      if (full.subset_ok[i]) CHECK(sect.subset_ok[i]);
      if (full.superset_ok[i]) CHECK(sect.superset_ok[i]);
    }
  }
}

TEST_CASE("a depressed sum path is flagged as an inclusion violation") {
  // Fabricated record: the radial at the single direction overshoots the
  // SLLN band, so the subset inclusion H(c) in M must fail.
  TrajectoryRecord rec;
  rec.d = 2;
  rec.mu = 1.0;
  rec.sigma = 1.0;
  rec.ts = {16.0};
  rec.directions = {kDiag};
  rec.dir_prods = {coord_prod(kDiag)};
  rec.in_cone = {1};
  rec.cone_weights = {1.0};
  rec.radial_slack = 1e-9;
  rec.radials.resize(1, 1);
  const double clean = std::pow(rec.dir_prods[0], -0.5);  // H radial
  rec.radials(0, 0) = clean * 1.25;                       // depressed sums
  const auto rep = slln_inclusion_check(rec, 1.5, 0.5);
  CHECK_FALSE(rep.subset_ok[0]);
  CHECK(rep.last_violation_t == 16.0);
  // an undisturbed radial passes the same bands
  rec.radials(0, 0) = clean;
  const auto ok = slln_inclusion_check(rec, 1.5, 0.5);
  CHECK(ok.subset_ok[0]);
  CHECK(ok.superset_ok[0]);
}

TEST_CASE("depressed-cell fixture shifts the dense radial outward") {
  // Unit cells except a hole at (1,1); the sums along the diagonal drop by
  // 1, so the renewal boundary moves out and the radial grows.
  const Lattice extent = Lattice::Constant(2, 24);
  std::vector<double> cells(24 * 24, 1.0);
  cells[0] = 0.0;  // cell (1,1)
  const auto grid = std::make_shared<const PrefixGrid>(
      PrefixGrid::from_cells(extent, cells));
  const RenewalSetView broken(100.0, grid, 1.0);
  const auto r = broken.radial(kDiag, 1e-10);
  const double clean = std::pow(coord_prod(kDiag), -0.5);
  CHECK(r.value > clean);
  // S at the crossing is t - 1 short of the clean value 100 on a box of
  // area 100: crossing where |y| = 101.
  CHECK(std::pow(r.value, 2.0) * coord_prod(kDiag) * 100.0 ==
        doctest::Approx(101.0).epsilon(1e-6));
}
