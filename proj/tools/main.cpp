// Command-line front end: experiment configuration, seed management,
// orchestration, CSV/JSON emission, and a self-test command exercising the
// closed-form oracles.
//
// Exit codes: 0 pass, 2 configuration error, 3 statistical criterion failed,
// 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "renewal/chentsov.hpp"
#include "renewal/experiments.hpp"
#include "renewal/limit_set.hpp"
#include "renewal/multisum.hpp"
#include "renewal/renewal_set.hpp"
#include "renewal/set_distance.hpp"
#include "renewal/stats.hpp"
#include "renewal/trajectory.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace renewal;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStatistical = 3;
constexpr int kExitInternal = 4;

// ---------------------------------------------------------------------------
// Flat key=value config files; every key is overridable by a CLI flag of the
// same name. Resolution order: built-in default < config file < flag.

std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string str) {
      const auto a = str.find_first_not_of(" \t\r");
      const auto b = str.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string()
                                    : str.substr(a, b - a + 1);
    };
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

class Settings {
 public:
  explicit Settings(CLI::App* cmd) : cmd_(cmd) {}

  void add(const std::string& key, const std::string& help,
           const std::string& def) {
    defaults_[key] = def;
    cmd_->add_option("--" + key, cli_[key], help);
  }

  void set_file_values(const std::map<std::string, std::string>* kv) {
    file_ = kv;
    for (const auto& [key, value] : *kv)
      if (!defaults_.count(key))
        throw std::invalid_argument("unknown config key '" + key +
                                    "' for this command");
  }

  bool provided(const std::string& key) const {
    return cmd_->count("--" + key) > 0 || (file_ && file_->count(key) > 0);
  }

  std::string get(const std::string& key) const {
    if (cmd_->count("--" + key)) return cli_.at(key);
    if (file_)
      if (auto it = file_->find(key); it != file_->end()) return it->second;
    return defaults_.at(key);
  }

  double get_double(const std::string& key) const {
    return parse_double(key, get(key));
  }
  std::int64_t get_int(const std::string& key) const {
    const std::string v = get(key);
    try {
      std::size_t pos = 0;
      const std::int64_t r = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key +
                                  "' expects an integer, got '" + v + "'");
    }
  }
  std::uint64_t get_u64(const std::string& key) const {
    const std::string v = get(key);
    try {
      std::size_t pos = 0;
      const std::uint64_t r = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key +
                                  "' expects an unsigned integer, got '" + v +
                                  "'");
    }
  }
  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get(key));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(parse_double(key, item));
    if (out.empty())
      throw std::invalid_argument("config key '" + key + "' is empty");
    return out;
  }

  std::map<std::string, std::string> resolved() const {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : defaults_) out[k] = get(k);
    return out;
  }

 private:
  static double parse_double(const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double r = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key +
                                  "' expects a number, got '" + v + "'");
    }
  }

  CLI::App* cmd_;
  const std::map<std::string, std::string>* file_ = nullptr;
  std::map<std::string, std::string> defaults_;
  std::map<std::string, std::string> cli_;
};

std::string config_hash(const std::string& command,
                        const std::map<std::string, std::string>& resolved) {
  // FNV-1a over the canonical "command\nkey=value\n..." serialization.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto eat = [&h](const std::string& str) {
    for (unsigned char c : str) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  eat(command);
  eat("\n");
  for (const auto& [k, v] : resolved) {
    eat(k);
    eat("=");
    eat(v);
    eat("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Deterministic artifact writers.

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

class RunContext {
 public:
  RunContext(std::string command, const Settings& settings, fs::path out_dir)
      : command_(std::move(command)),
        out_dir_(std::move(out_dir)),
        resolved_(settings.resolved()),
        start_(std::chrono::steady_clock::now()) {
    fs::create_directories(out_dir_);
  }

  fs::path csv_path() const { return out_dir_ / (command_ + ".csv"); }

  void criterion(const std::string& name, double value, double threshold,
                 bool pass) {
    criteria_.push_back({name, value, threshold, pass});
  }

  // Command-specific key statistics, reported alongside the criteria.
  json& stats() { return stats_; }

  int finish(std::uint64_t seed, bool has_seed = true) {
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    bool all_pass = true;
    json j;
    j["command"] = command_;
    j["config_hash"] = config_hash(command_, resolved_);
    if (has_seed)
      j["seed"] = seed;
    else
      j["seed"] = nullptr;
    j["criteria"] = json::array();
    for (const auto& c : criteria_) {
      json jc;
      jc["name"] = c.name;
      jc["value"] = c.value;
      jc["threshold"] = c.threshold;
      jc["pass"] = c.pass;
      j["criteria"].push_back(jc);
      all_pass = all_pass && c.pass;
    }
    if (!stats_.empty()) j["stats"] = stats_;
    j["runtime_seconds"] = elapsed;
    std::ofstream out(out_dir_ / (command_ + ".json"));
    out << j.dump(2) << "\n";
    return all_pass ? kExitPass : kExitStatistical;
  }

 private:
  struct Criterion {
    std::string name;
    double value;
    double threshold;
    bool pass;
  };
  std::string command_;
  fs::path out_dir_;
  std::map<std::string, std::string> resolved_;
  std::vector<Criterion> criteria_;
  json stats_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Domain-object parsing shared across commands.

void add_dist_keys(Settings& s) {
  s.add("dist", "summand family: constant|exponential|bernoulli|pareto",
        "exponential");
  s.add("value", "constant summand value", "1.0");
  s.add("rate", "exponential rate", "1.0");
  s.add("scale", "bernoulli/pareto scale", "1.0");
  s.add("prob", "bernoulli success probability", "0.5");
  s.add("tail_index", "pareto tail index", "2.5");
}

SummandDistribution parse_dist(const Settings& s) {
  const std::string kind = s.get("dist");
  if (kind == "constant")
    return SummandDistribution::constant(s.get_double("value"));
  if (kind == "exponential")
    return SummandDistribution::exponential(s.get_double("rate"));
  if (kind == "bernoulli")
    return SummandDistribution::bernoulli_scaled(s.get_double("scale"),
                                                 s.get_double("prob"));
  if (kind == "pareto")
    return SummandDistribution::shifted_pareto(s.get_double("tail_index"),
                                               s.get_double("scale"));
  throw std::invalid_argument("unknown distribution family: " + kind);
}

void add_cone_key(Settings& s, const std::string& def) {
  s.add("cone", "cone spec: aperture:<theta> or angles:<a>,<b> (radians, d=2)",
        def);
}

ConeSpec parse_cone(const Settings& s, int d) {
  const std::string spec = s.get("cone");
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("cone spec must be aperture:... or angles:...");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "aperture") return ConeSpec::aperture(d, std::stod(rest));
  if (kind == "angles") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("angles cone needs two values");
    return ConeSpec::angle_interval(std::stod(rest.substr(0, comma)),
                                    std::stod(rest.substr(comma + 1)));
  }
  throw std::invalid_argument("unknown cone kind: " + kind);
}

std::uint64_t require_seed(const Settings& s) {
  if (!s.provided("seed"))
    throw std::invalid_argument(
        "--seed is required (no wall-clock seeding for statistical runs)");
  return s.get_u64("seed");
}

void add_trajectory_keys(Settings& s) {
  add_dist_keys(s);
  s.add("d", "grid dimension", "2");
  s.add("seed", "base seed (required)", "0");
  s.add("t_min_exp", "smallest dyadic exponent of t", "8");
  s.add("t_max_exp", "largest dyadic exponent of t", "20");
  s.add("directions", "directions per net", "64");
  s.add("beta", "SLLN envelope exponent in [1,2)", "1.5");
  s.add("eps", "SLLN envelope epsilon", "1.0");
  s.add("gamma_mult", "LIL band multiple of the critical mu^{-3/2}", "10");
  add_cone_key(s, "aperture:0.5");
}

TrajectoryOptions trajectory_options(const Settings& s, int d) {
  TrajectoryOptions opt;
  opt.t_grid = dyadic_grid(static_cast<int>(s.get_int("t_min_exp")),
                           static_cast<int>(s.get_int("t_max_exp")));
  opt.cone = parse_cone(s, d);
  opt.directions = static_cast<int>(s.get_int("directions"));
  opt.beta = s.get_double("beta");
  opt.eps = s.get_double("eps");
  opt.gamma_mult = s.get_double("gamma_mult");
  return opt;
}

// ---------------------------------------------------------------------------
// Commands.

int run_selftest(const Settings& s, const fs::path& out_dir) {
  RunContext ctx("selftest", s, out_dir);
  CsvWriter csv(ctx.csv_path(), "check,value,threshold,pass");
  auto record = [&](const std::string& name, double value, double threshold,
                    bool pass) {
    ctx.criterion(name, value, threshold, pass);
    csv.row({name, fmt(value), fmt(threshold), pass ? "1" : "0"});
  };

  // Interpolation reproduces the coordinate product with unit summands.
  {
    double worst = 0;
    for (int d = 1; d <= 3; ++d) {
      const FieldSampler ones(0, SummandDistribution::constant(1.0), d);
      const auto grid = std::make_shared<const PrefixGrid>(
          PrefixGrid::build(ones, Lattice::Constant(d, 12)));
      const DenseSumSource src(grid);
      std::uint64_t h = 17u + static_cast<unsigned>(d);
      for (int rep = 0; rep < 3000; ++rep) {
        Vec x(d);
        for (int i = 0; i < d; ++i) {
          h = mix64(h + kGolden);
          x[i] = 11.0 * uniform01(h);
        }
        const double target = coord_prod(x);
        const double err = std::abs(interpolate(src, x) - target);
        if (target > 0) worst = std::max(worst, err / target);
      }
    }
    record("interpolation_exactness_rel", worst, 1e-12, worst <= 1e-12);
  }

  // Boundary-cloud Hausdorff between nested limit sets vs the closed form.
  {
    const auto [a, b] = window_cone_2d(2.0, 6.0);
    const auto net = direction_net_2d(a, b, 2000);
    const auto est =
        hausdorff_estimate(limit_set_sample(LimitSet(1.0, 0.0), net),
                           limit_set_sample(LimitSet(1.0, 1.0), net), 6.0);
    const double target = 2.0 - std::sqrt(2.0);
    const double rel = std::abs(est.value - target) / target;
    record("hausdorff_cloud_vs_closed_rel", rel, 0.01, rel <= 0.01);
  }

  // Directional-quadrature symmetric difference vs L_K (c2 - c1).
  {
    const auto cone =
        ConeSpec::angle_interval(std::numbers::pi / 6, std::numbers::pi / 3);
    const LimitSet h0(1.0, 0.0), h2(1.0, 0.2);
    const auto est =
        symdiff_estimate([&](const Vec& u) { return h0.radial(u); },
                         [&](const Vec& u) { return h2.radial(u); }, cone, 512);
    const double target =
        0.2 * l_k_analytic(std::numbers::pi / 6, std::numbers::pi / 3);
    const double rel = std::abs(est.value - target) / target;
    record("symdiff_quadrature_vs_closed_rel", rel, 0.01, rel <= 0.01);
  }

  // L_K quadrature against the antiderivative on two angle intervals.
  {
    const double e1 =
        std::abs(l_k(ConeSpec::angle_interval(std::numbers::pi / 6,
                                              std::numbers::pi / 3),
                     LkMethod::Quadrature)
                     .value -
                 0.5 * std::log(3.0));
    const double e2 =
        std::abs(l_k(ConeSpec::angle_interval(std::numbers::pi / 8,
                                              3 * std::numbers::pi / 8),
                     LkMethod::Quadrature)
                     .value -
                 0.5 * std::log(3.0 + 2.0 * std::sqrt(2.0)));
    record("lk_quadrature_abs_err", std::max(e1, e2), 1e-6,
           std::max(e1, e2) <= 1e-6);
  }

  // Divisor counts against brute-force enumeration.
  {
    std::uint64_t mismatches = 0;
    for (std::uint64_t k = 1; k <= 200; ++k) {
      std::uint64_t brute = 0;
      for (std::uint64_t i = 1; i <= k; ++i) brute += k / i;
      if (divisor_count(2, k) != brute) ++mismatches;
    }
    if (divisor_count(2, 3) != 5) ++mismatches;
    if (divisor_count(3, 2) != 4) ++mismatches;
    record("divisor_count_mismatches", static_cast<double>(mismatches), 0.0,
           mismatches == 0);
  }

  return ctx.finish(0, /*has_seed=*/false);
}

int run_slln(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const FieldSampler sampler(seed, parse_dist(s), d);
  const auto summary = moment_summary(sampler.distribution(), d);
  if (!summary.beta_admissible(s.get_double("beta")))
    throw std::invalid_argument(
        "beta violates the moment condition for this distribution");
  const auto opt = trajectory_options(s, d);
  const auto rec = run_trajectory(sampler, opt);

  RunContext ctx("slln", s, out_dir);
  CsvWriter csv(ctx.csv_path(),
                "t,c_t,subset_ok,superset_ok,margin_subset,margin_superset");
  for (const auto& row : rec.rows) {
    const double c = opt.eps * std::pow(row.t, 1.0 / opt.beta - 1.0);
    csv.row({fmt(row.t), fmt(c), row.slln_subset_ok ? "1" : "0",
             row.slln_superset_ok ? "1" : "0", fmt(row.slln_margin_subset),
             fmt(row.slln_margin_superset)});
  }
  const double clean_from = s.get_double("clean_from");
  std::uint64_t late_violations = 0;
  for (const auto& row : rec.rows)
    if (row.t >= clean_from && !(row.slln_subset_ok && row.slln_superset_ok))
      ++late_violations;
  ctx.criterion("violations_from_t_" + fmt(clean_from),
                static_cast<double>(late_violations), 0.0,
                late_violations == 0);
  const auto rep = slln_inclusion_check(rec, opt.beta, opt.eps);
  if (std::isnan(rep.last_violation_t))
    ctx.stats()["last_violation_t"] = nullptr;
  else
    ctx.stats()["last_violation_t"] = rep.last_violation_t;
  ctx.stats()["final_margin_subset"] = rec.rows.back().slln_margin_subset;
  ctx.stats()["final_margin_superset"] = rec.rows.back().slln_margin_superset;
  return ctx.finish(seed);
}

int run_lil(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const FieldSampler sampler(seed, parse_dist(s), d);
  const auto rec = run_trajectory(sampler, trajectory_options(s, d));

  RunContext ctx("lil", s, out_dir);
  CsvWriter csv(ctx.csv_path(),
                "t,rho_H,rho_tri,phi_t,ratio_H,ratio_tri,running_sup_H,"
                "incl_subset_ok,incl_superset_ok");
  for (const auto& row : rec.rows)
    csv.row({fmt(row.t), fmt(row.rho_h), fmt(row.rho_tri), fmt(row.phi_t),
             fmt(row.ratio_h), fmt(row.ratio_tri), fmt(row.running_sup_h),
             row.lil_subset_ok ? "1" : "0", row.lil_superset_ok ? "1" : "0"});

  const auto stats = metric_lil_stats(rec);
  const double hi_band = s.get_double("band_hi") * stats.const_h;
  const double lo_band = s.get_double("band_lo") * stats.const_h;
  ctx.criterion("sup_ratio_H_below_band", stats.sup_ratio_h, hi_band,
                stats.sup_ratio_h <= hi_band);
  ctx.criterion("sup_ratio_H_above_floor", stats.sup_ratio_h, lo_band,
                stats.sup_ratio_h >= lo_band);
  const double clean_from = s.get_double("clean_from");
  std::uint64_t late = 0;
  for (const auto& row : rec.rows)
    if (row.t >= clean_from && !(row.lil_subset_ok && row.lil_superset_ok))
      ++late;
  ctx.criterion("envelope_violations_from_t_" + fmt(clean_from),
                static_cast<double>(late), 0.0, late == 0);
  ctx.stats()["sup_ratio_H"] = stats.sup_ratio_h;
  ctx.stats()["sup_ratio_tri"] = stats.sup_ratio_tri;
  ctx.stats()["const_H"] = stats.const_h;
  ctx.stats()["const_tri"] = stats.const_tri;
  ctx.stats()["degenerate_sigma"] = rec.degenerate_sigma;
  return ctx.finish(seed);
}

int run_liminf(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const FieldSampler sampler(seed, parse_dist(s), d);
  const auto rec = run_trajectory(sampler, trajectory_options(s, d));
  const auto rep = liminf_stats(rec);

  RunContext ctx("liminf", s, out_dir);
  CsvWriter csv(ctx.csv_path(),
                "t,rho_H,rho_tri,sqrt_t_rho_H,sqrt_t_rho_tri,running_min_H,"
                "running_min_tri");
  for (const auto& row : rec.rows)
    csv.row({fmt(row.t), fmt(row.rho_h), fmt(row.rho_tri),
             fmt(row.sqrt_t_rho_h), fmt(row.sqrt_t_rho_tri),
             fmt(row.running_min_h), fmt(row.running_min_tri)});

  const double ref_t = s.get_double("decay_ref_t");
  const double ref = rep.running_min_h_at(ref_t);
  const double target = s.get_double("decay_factor") * ref;
  ctx.criterion("running_min_decay", rep.final_min_h, target,
                rep.final_min_h < target);
  ctx.stats()["final_min_H"] = rep.final_min_h;
  ctx.stats()["final_min_tri"] = rep.final_min_tri;
  ctx.stats()["reference_min_H"] = ref;
  return ctx.finish(seed);
}

int run_clt(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const auto dist = parse_dist(s);
  const auto uv = s.get_doubles("u");
  if (static_cast<int>(uv.size()) != d)
    throw std::invalid_argument("direction u must have d components");
  Vec u(d);
  for (int i = 0; i < d; ++i) u[i] = uv[static_cast<std::size_t>(i)];
  const double norm = euclidean_norm(u);
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("direction u must be (close to) unit length");
  u /= norm;

  const auto res =
      clt_sample(dist, d, u, s.get_double("t"),
                 static_cast<int>(s.get_int("replicates")), seed,
                 s.get_double("alpha"));

  RunContext ctx("clt", s, out_dir);
  CsvWriter csv(ctx.csv_path(), "replicate,value");
  for (std::size_t i = 0; i < res.samples.size(); ++i)
    csv.row({std::to_string(i), fmt(res.samples[i])});
  ctx.criterion("ks_below_critical", res.ks_stat, res.ks_threshold, res.pass);
  ctx.criterion("nondegenerate_limit", res.degenerate ? 0.0 : 1.0, 1.0,
                !res.degenerate);
  const auto sm = summarize(res.samples);
  ctx.stats()["ks_stat"] = res.ks_stat;
  ctx.stats()["ks_threshold"] = res.ks_threshold;
  ctx.stats()["limit_variance"] = res.limit_variance;
  ctx.stats()["sample_mean"] = sm.mean;
  ctx.stats()["sample_variance"] = sm.variance;
  ctx.stats()["degenerate"] = res.degenerate;
  return ctx.finish(seed);
}

int run_sector(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const FieldSampler sampler(seed, parse_dist(s), d);
  const auto res =
      sectorial_lil_compare(sampler, parse_cone(s, d), s.get_int("horizon"));

  RunContext ctx("sector", s, out_dir);
  CsvWriter csv(ctx.csv_path(), "m,cone_sup,overall_sup");
  for (const auto& cp : res.checkpoints)
    csv.row({std::to_string(cp.m), fmt(cp.cone_sup), fmt(cp.overall_sup)});
  ctx.criterion("cone_sup_le_overall", res.cone_sup, res.overall_sup,
                res.cone_sup <= res.overall_sup);
  const double lo = s.get_double("ratio_lo"), hi = s.get_double("ratio_hi");
  const bool ratio_ok =
      std::isnan(res.ratio) ? false : res.ratio >= lo && res.ratio <= hi;
  ctx.criterion("overall_over_cone_ratio", res.ratio, hi, ratio_ok);
  ctx.stats()["cone_sup"] = res.cone_sup;
  ctx.stats()["overall_sup"] = res.overall_sup;
  ctx.stats()["ratio"] = res.ratio;
  ctx.stats()["cone_target"] = res.cone_target;
  ctx.stats()["overall_target"] = res.overall_target;
  return ctx.finish(seed);
}

int run_count(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const FieldSampler sampler(seed, parse_dist(s), d);
  const auto ts = s.get_doubles("ts");
  const auto res = n_t_slln_check(sampler, ts);

  RunContext ctx("count", s, out_dir);
  CsvWriter csv(ctx.csv_path(), "t,n_t,ratio,oracle");
  bool oracle_ok = true;
  for (const auto& row : res.rows) {
    csv.row({fmt(row.t), std::to_string(row.n_t), fmt(row.ratio),
             row.has_oracle ? std::to_string(row.oracle) : ""});
    if (row.has_oracle && row.n_t != row.oracle) oracle_ok = false;
  }
  if (!res.rows.empty() && res.rows.front().has_oracle)
    ctx.criterion("count_equals_divisor_oracle", oracle_ok ? 1.0 : 0.0, 1.0,
                  oracle_ok);
  const double lo = s.get_double("ratio_lo"), hi = s.get_double("ratio_hi");
  const double last = res.rows.back().ratio / res.limit;
  ctx.criterion("final_ratio_over_limit", last, hi, last >= lo && last <= hi);
  ctx.stats()["limit"] = res.limit;
  ctx.stats()["rows"] = json::array();
  for (const auto& row : res.rows) {
    json jr;
    jr["t"] = row.t;
    jr["N_t"] = row.n_t;
    jr["ratio"] = row.ratio;
    if (row.has_oracle) jr["divisor_oracle"] = row.oracle;
    ctx.stats()["rows"].push_back(jr);
  }
  return ctx.finish(seed);
}

int run_chentsov(const Settings& s, const fs::path& out_dir) {
  const auto seed = require_seed(s);
  const int d = static_cast<int>(s.get_int("d"));
  const int m = static_cast<int>(s.get_int("resolution"));
  const int extent = static_cast<int>(s.get_int("extent"));
  const int paths = static_cast<int>(s.get_int("paths"));
  const double cov_tol = s.get_double("cov_tol");
  if (d != 2)
    throw std::invalid_argument("the chentsov command fixes d = 2 pairs");

  RunContext ctx("chentsov", s, out_dir);
  CsvWriter csv(ctx.csv_path(), "check,id,value,target,abs_err");

  const std::vector<std::pair<Vec, Vec>> pairs = [] {
    std::vector<std::pair<Vec, Vec>> p;
    auto v = [](double a, double b) {
      Vec x(2);
      x << a, b;
      return x;
    };
    p.emplace_back(v(1.0, 1.0), v(1.0, 1.0));
    p.emplace_back(v(0.5, 0.5), v(0.5, 0.5));
    p.emplace_back(v(0.5, 0.5), v(1.0, 1.0));
    p.emplace_back(v(1.0, 0.5), v(0.5, 1.0));
    p.emplace_back(v(0.75, 1.0), v(1.0, 0.75));
    return p;
  }();

  std::vector<double> acc(pairs.size(), 0.0);
  double zeta_worst = 0;
  const int zeta_dirs = static_cast<int>(s.get_int("zeta_directions"));
  std::vector<std::array<double, 3>> zeta_rows;
  for (int p = 0; p < paths; ++p) {
    const ChentsovPath path(d, m, derive_seed(seed, p), extent);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      acc[i] += path.value(pairs[i].first) * path.value(pairs[i].second);
    if (p == 0 && extent >= 2 && zeta_dirs > 1) {
      // Per-path self-similarity identity over a log-spaced direction fan.
      for (int k = 0; k < zeta_dirs; ++k) {
        const double ratio_span = extent * extent * 0.81;
        const double sratio =
            std::pow(ratio_span,
                     (2.0 * k - (zeta_dirs - 1)) / (zeta_dirs - 1.0) / 2.0);
        Vec u(2);
        u << 0.9 * sratio, 0.9 / sratio;
        const double z1 = zeta_extrapolate(path, u);
        const double z2 = zeta_extrapolate(path, Vec(2.0 * u));
        const double scaled = std::ldexp(z1, -d);  // c^{-d} at c = 2
        const double err = std::abs(z2 - scaled) / (1.0 + std::abs(z1));
        zeta_worst = std::max(zeta_worst, err);
        zeta_rows.push_back({z2, scaled, err});
      }
    }
  }
  bool cov_ok = true;
  double worst_cov_err = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double target = coord_prod(Vec(pairs[i].first.min(pairs[i].second)));
    const double got = acc[i] / paths;
    const double err = std::abs(got - target);
    worst_cov_err = std::max(worst_cov_err, err);
    csv.row({"covariance", std::to_string(i), fmt(got), fmt(target), fmt(err)});
    if (err > cov_tol * target) cov_ok = false;
  }
  for (std::size_t k = 0; k < zeta_rows.size(); ++k)
    csv.row({"zeta_selfsim", std::to_string(k), fmt(zeta_rows[k][0]),
             fmt(zeta_rows[k][1]), fmt(zeta_rows[k][2])});
  ctx.criterion("covariance_within_tolerance", cov_ok ? 1.0 : 0.0, 1.0, cov_ok);
  if (!zeta_rows.empty())
    ctx.criterion("zeta_selfsimilarity_residual", zeta_worst, 1e-12,
                  zeta_worst <= 1e-12);
  ctx.stats()["worst_covariance_abs_err"] = worst_cov_err;
  ctx.stats()["zeta_worst_residual"] = zeta_worst;
  return ctx.finish(seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulation and verification toolkit for multidimensional renewal sets "
      "M_t = {x : S_x >= t}"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_flag;
  app.add_option("--config", config_path,
                 "flat key=value config file; flags override keys");
  app.add_option("--out", out_dir_flag, "output directory for CSV/JSON");

  struct Cmd {
    CLI::App* sub = nullptr;
    std::unique_ptr<Settings> settings;
    int (*runner)(const Settings&, const fs::path&) = nullptr;
  };
  std::vector<Cmd> cmds;

  auto make = [&](const std::string& name, const std::string& help,
                  int (*runner)(const Settings&, const fs::path&),
                  auto&& add_keys) {
    Cmd c;
    c.sub = app.add_subcommand(name, help);
    c.sub->fallthrough();  // --config/--out may follow the subcommand
    c.settings = std::make_unique<Settings>(c.sub);
    c.runner = runner;
    add_keys(*c.settings);
    cmds.push_back(std::move(c));
  };

  make("selftest", "closed-form oracle suite", run_selftest, [](Settings&) {});
  make("slln", "set-inclusion strong-law bands", run_slln, [](Settings& s) {
    add_trajectory_keys(s);
    s.add("clean_from", "no violations expected for t >= this", "4096");
  });
  make("lil", "iterated-logarithm envelopes and distance ratios", run_lil,
       [](Settings& s) {
         add_trajectory_keys(s);
         s.add("band_hi", "sup ratio must stay below band_hi * constant", "3");
         s.add("band_lo", "sup ratio must exceed band_lo * constant", "0.2");
         s.add("clean_from", "no envelope violations for t >= this", "16384");
       });
  make("liminf", "lower-limit decay of sqrt(t)-scaled distances", run_liminf,
       [](Settings& s) {
         add_trajectory_keys(s);
         s.add("decay_ref_t", "reference t for the running-min ratio", "1024");
         s.add("decay_factor", "final min must be below factor * reference",
               "0.5");
       });
  make("clt", "radial-function central limit check", run_clt, [](Settings& s) {
    add_dist_keys(s);
    s.add("d", "grid dimension", "2");
    s.add("seed", "base seed (required)", "0");
    s.add("u", "unit direction components, comma separated",
          "0.7071067811865476,0.7071067811865476");
    s.add("t", "threshold", "4096");
    s.add("replicates", "independent replicates (>= 50)", "400");
    s.add("alpha", "KS significance level", "0.01");
  });
  make("sector", "sectorial vs full-orthant LIL suprema", run_sector,
       [](Settings& s) {
         add_dist_keys(s);
         s.add("d", "grid dimension", "2");
         s.add("seed", "base seed (required)", "0");
         s.add("horizon", "per-axis lattice horizon", "2048");
         add_cone_key(s, "aperture:0.5");
         s.add("ratio_lo", "lower bound for overall/cone ratio", "1.0");
         s.add("ratio_hi", "upper bound for overall/cone ratio", "2.0");
       });
  make("count", "lattice deficiency counts N_t with divisor oracle", run_count,
       [](Settings& s) {
         add_dist_keys(s);
         s.add("d", "grid dimension", "2");
         s.add("seed", "base seed (required)", "0");
         s.add("ts", "comma-separated thresholds", "1000000");
         s.add("ratio_lo", "lower band for N_t ratio over its limit", "0.7");
         s.add("ratio_hi", "upper band for N_t ratio over its limit", "1.3");
       });
  make("chentsov", "limit-field covariance and self-similarity", run_chentsov,
       [](Settings& s) {
         s.add("d", "grid dimension (2)", "2");
         s.add("seed", "base seed (required)", "0");
         s.add("resolution", "grid resolution m (h = 1/m)", "64");
         s.add("extent", "grid spans [0, extent]^d", "4");
         s.add("paths", "simulated paths", "2000");
         s.add("cov_tol", "relative covariance tolerance", "0.1");
         s.add("zeta_directions", "directions for the identity check", "100");
       });

  CLI11_PARSE(app, argc, argv);

  try {
    const auto file_values = load_config(config_path);
    const fs::path out_dir = !out_dir_flag.empty()
                                 ? fs::path(out_dir_flag)
                                 : [] {
                                     const char* env =
                                         std::getenv("RENEWAL_OUT_DIR");
                                     return fs::path(env ? env : ".");
                                   }();
    for (auto& c : cmds) {
      if (c.sub->parsed()) {
        c.settings->set_file_values(&file_values);
        return c.runner(*c.settings, out_dir);
      }
    }
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "{\"error\":\"config\",\"message\":\"%s\"}\n",
                 e.what());
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "{\"error\":\"config\",\"message\":\"%s\"}\n",
                 e.what());
    return kExitConfig;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "{\"error\":\"config\",\"message\":\"%s\"}\n",
                 e.what());
    return kExitConfig;
  } catch (const UnsupportedModeError& e) {
    std::fprintf(stderr, "{\"error\":\"config\",\"message\":\"%s\"}\n",
                 e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":\"internal\",\"message\":\"%s\"}\n",
                 e.what());
    return kExitInternal;
  }
}
