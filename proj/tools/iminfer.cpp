// iminfer: command-line front end for belief evaluation, plausibility
// curves and intervals, validity and coverage audits, and the IM versus
// default-prior Bayes comparison.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iminfer/audit.hpp"
#include "iminfer/belief_core.hpp"
#include "iminfer/engine.hpp"
#include "iminfer/error.hpp"
#include "iminfer/models.hpp"
#include "iminfer/param_set.hpp"
#include "iminfer/rng.hpp"

namespace {

using iminfer::Error;
using iminfer::ErrorKind;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;
constexpr int kExitAudit = 4;

// Stream ids keep the generators of different commands apart.
constexpr std::uint64_t kBelieveStream = 0x62656c;
constexpr std::uint64_t kSimulateStream = 0x73696d;

/// Bad flag value; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& flag, std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError(flag + ": expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

iminfer::Assertion parse_assertion(const std::string& flag, const std::string& text) {
  try {
    return {iminfer::parse_param_set(text), text};
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

iminfer::ModelKind parse_model(const std::string& text) {
  try {
    return iminfer::parse_model_kind(text);
  } catch (const Error&) {
    throw UsageError("--model: expected normal-mean or normal-cv, got '" + text + "'");
  }
}

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) {
    const double a = parse_real("--alphas", trim(part));
    if (!(a > 0.0 && a < 1.0)) throw UsageError("--alphas: each alpha must lie in (0,1)");
    out.push_back(a);
  }
  return out;
}

struct Grid {
  double lo;
  double hi;
  std::size_t points;
};

Grid parse_grid(const std::string& flag, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError(flag + ": expected lo:hi:points");
  const Grid g{parse_real(flag, trim(parts[0])), parse_real(flag, trim(parts[1])),
               static_cast<std::size_t>(parse_real(flag, trim(parts[2])))};
  if (!(g.lo < g.hi) || g.points < 2 || static_cast<double>(g.points) != parse_real(flag, trim(parts[2]))) {
    throw UsageError(flag + ": need lo < hi and an integer point count >= 2");
  }
  return g;
}

double grid_node(const Grid& g, std::size_t i) {
  if (i + 1 == g.points) return g.hi;
  return g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.points - 1);
}

/// JSON value for a possibly infinite endpoint.
Json endpoint(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json param_set_json(const iminfer::ParamSet& set) {
  Json components = Json::array();
  for (const auto& c : set.components()) {
    components.push_back(
        {{"lo", endpoint(c.lo)}, {"hi", endpoint(c.hi)}, {"lo_closed", c.lo_closed}, {"hi_closed", c.hi_closed}});
  }
  return {{"text", iminfer::format_param_set(set)}, {"components", components}};
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void echo_seed(std::uint64_t seed) { std::cerr << "seed=" << seed << '\n'; }

// ---------------------------------------------------------------------------
// Observation handling shared by believe, curve and interval.

struct ObservationFlags {
  std::string model;
  std::optional<double> x;
  std::string data;
};

void add_observation_flags(CLI::App* cmd, ObservationFlags& f, bool model_required) {
  auto* model = cmd->add_option("--model", f.model, "normal-mean or normal-cv");
  if (model_required) model->required();
  auto* x = cmd->add_option("--x", f.x, "observation (normal-mean)");
  auto* data = cmd->add_option("--data", f.data, "CSV sample, one value per line, optional header x");
  x->excludes(data);
}

/// The model's association together with its observed statistic.
struct Observed {
  iminfer::ModelKind model;
  std::optional<iminfer::NormalMeanAssociation> normal;
  std::optional<iminfer::CvAssociation> cv;
  double statistic;
  int n = 1;

  const iminfer::Association& association() const {
    if (normal) return *normal;
    return *cv;
  }
};

Observed observe(const ObservationFlags& f) {
  Observed o{parse_model(f.model), std::nullopt, std::nullopt, 0.0};
  if (o.model == iminfer::ModelKind::NormalMean) {
    if (!f.x) throw UsageError("--x: required for normal-mean");
    o.normal = iminfer::normal_mean_association();
    o.statistic = *f.x;
    return o;
  }
  if (f.data.empty()) throw UsageError("--data: required for normal-cv");
  const iminfer::CvStatistic stat = iminfer::cv_statistic(iminfer::read_dataset(f.data));
  o.cv = iminfer::cv_association(stat.n);
  o.statistic = stat.t;
  o.n = stat.n;
  return o;
}

void describe(Json& out, const Observed& o) {
  out["model"] = std::string(iminfer::to_string(o.model));
  out["statistic"] = o.statistic;
  if (o.model == iminfer::ModelKind::NormalCv) out["n"] = o.n;
}

// ---------------------------------------------------------------------------

struct BelieveFlags {
  ObservationFlags obs;
  std::string assertion;
  std::uint64_t draws = 100000;
};

int run_believe(const BelieveFlags& f, std::uint64_t seed) {
  const iminfer::Assertion a = parse_assertion("--assertion", f.assertion);
  const Observed o = observe(f.obs);
  Json out{{"command", "believe"}};
  describe(out, o);
  out["assertion"] = iminfer::format_param_set(a.region);
  if (f.draws == 0) {
    const auto r = iminfer::belief_default_closed(o.association(), o.statistic, a);
    out["method"] = "closed-form";
    out["belief"] = r.belief;
    out["plausibility"] = r.plausibility;
    out["draws"] = 0;
    out["belief_mc_se"] = 0.0;
    out["plausibility_mc_se"] = 0.0;
  } else {
    const auto r = iminfer::belief_mc(o.association(), iminfer::default_random_set(), o.statistic, a, f.draws,
                                      iminfer::StreamRng(seed, kBelieveStream));
    out["method"] = "monte-carlo";
    out["belief"] = r.belief;
    out["plausibility"] = r.plausibility;
    out["draws"] = r.draws;
    out["belief_mc_se"] = r.belief_mc_se;
    out["plausibility_mc_se"] = r.plausibility_mc_se;
  }
  out["seed"] = seed;
  print_json(out);
  return 0;
}

// ---------------------------------------------------------------------------

struct CurveFlags {
  ObservationFlags obs{"normal-cv", std::nullopt, ""};
  std::string grid;
};

int run_curve(const CurveFlags& f, std::uint64_t seed) {
  const Grid g = parse_grid("--theta-grid", f.grid);
  const Observed o = observe(f.obs);
  std::ostringstream csv;
  csv << "theta,plausibility\n";
  for (std::size_t i = 0; i < g.points; ++i) {
    const double theta = grid_node(g, i);
    const double pl = o.cv ? iminfer::cv_singleton_plausibility_extended({o.statistic, o.n}, theta)
                           : iminfer::singleton_plausibility(o.association(), iminfer::default_random_set(),
                                                             o.statistic, theta);
    csv << iminfer::format_number(theta) << ',' << iminfer::format_number(pl) << '\n';
  }
  std::cout << csv.str();
  echo_seed(seed);
  return 0;
}

// ---------------------------------------------------------------------------

struct IntervalFlags {
  ObservationFlags obs;
  double alpha = 0.05;
  std::string scan_grid;
};

int run_interval(const IntervalFlags& f, std::uint64_t seed) {
  if (!(f.alpha > 0.0 && f.alpha < 1.0)) throw UsageError("--alpha: must lie in (0,1)");
  std::optional<Grid> grid;
  if (!f.scan_grid.empty()) grid = parse_grid("--scan-grid", f.scan_grid);
  const Observed o = observe(f.obs);
  const iminfer::ParamSet region =
      grid ? iminfer::plausibility_region(o.association(), iminfer::default_random_set(), o.statistic, f.alpha,
                                          {grid->lo, grid->hi, grid->points})
           : iminfer::plausibility_interval_default(o.association(), o.statistic, f.alpha);
  Json out{{"command", "interval"}};
  describe(out, o);
  out["alpha"] = f.alpha;
  out["method"] = grid ? "grid" : "closed-form";
  out["region"] = param_set_json(region);
  out["bounded"] = region.bounded();
  out["seed"] = seed;
  print_json(out);
  return 0;
}

// ---------------------------------------------------------------------------

struct AuditFlags {
  std::string mode;
  std::string model;
  double theta = 0.0;
  double mu = 0.1;
  double sigma = 1.0;
  int n = 10;
  std::string assertion;
  std::size_t reps = 1000;
  std::string alphas = "0.01,0.05,0.1,0.25,0.5";
  double alpha = 0.05;
  std::uint64_t draws = 0;
};

Json config_json(const iminfer::AuditConfig& cfg) {
  Json truth;
  if (cfg.model == iminfer::ModelKind::NormalMean) {
    truth = {{"theta", cfg.truth.theta}};
  } else {
    truth = {{"mu", cfg.truth.mu}, {"sigma", cfg.truth.sigma}, {"n", cfg.truth.n}};
  }
  return {{"model", std::string(iminfer::to_string(cfg.model))},
          {"truth", truth},
          {"assertion", iminfer::format_param_set(cfg.assertion.region)},
          {"replications", cfg.replications},
          {"alphas", cfg.alphas},
          {"draws_per_replication", cfg.draws_per_replication},
          {"seed", cfg.seed}};
}

int run_audit(const AuditFlags& f, std::uint64_t seed) {
  iminfer::AuditConfig cfg;
  cfg.model = parse_model(f.model);
  cfg.truth = {f.theta, f.mu, f.sigma, f.n};
  cfg.replications = f.reps;
  cfg.alphas = parse_alphas(f.alphas);
  cfg.draws_per_replication = f.draws;
  cfg.seed = seed;
  if (cfg.model == iminfer::ModelKind::NormalCv && (!(f.sigma > 0.0) || f.n < 2)) {
    throw UsageError("--sigma/--n: need sigma > 0 and n >= 2");
  }

  Json out{{"command", "audit"}, {"mode", f.mode}};
  bool ok = true;
  if (f.mode == "coverage") {
    cfg.assertion = {iminfer::ParamSet::real_line(), "(-inf,inf)"};
    if (!(f.alpha > 0.0 && f.alpha < 1.0)) throw UsageError("--alpha: must lie in (0,1)");
    cfg.alphas = {f.alpha};
    const auto r = iminfer::coverage_audit(cfg, f.alpha);
    out["config"] = config_json(cfg);
    out["config"].erase("assertion");
    out["config"].erase("alphas");
    out["alpha"] = r.alpha;
    out["coverage_rate"] = r.coverage_rate;
    out["mc_se"] = r.mc_se;
    out["replications"] = r.replications;
    if (r.fraction_unbounded) out["fraction_unbounded"] = *r.fraction_unbounded;
    out["resampled_count"] = r.resampled_count;
    out["bound_satisfied"] = r.bound_satisfied;
    ok = r.bound_satisfied;
  } else {
    if (f.assertion.empty()) throw UsageError("--assertion: required for validity audits");
    cfg.assertion = parse_assertion("--assertion", f.assertion);
    const bool holds = iminfer::truth_in_assertion(cfg);
    const auto samples = holds ? iminfer::simulate_plausibility_samples(cfg) : iminfer::simulate_belief_samples(cfg);
    auto report = holds ? iminfer::plausibility_audit(samples.values, cfg.alphas)
                        : iminfer::validity_audit(samples.values, cfg.alphas);
    report.resampled_count = samples.resampled_count;
    out["config"] = config_json(cfg);
    out["form"] = holds ? "plausibility" : "belief";
    out["truth_in_assertion"] = holds;
    Json per_alpha = Json::array();
    for (const auto& r : report.per_alpha) {
      per_alpha.push_back({{"alpha", r.alpha},
                           {"exceedance_rate", r.exceedance_rate},
                           {"mc_se", r.mc_se},
                           {"bound_satisfied", r.bound_satisfied}});
    }
    out["per_alpha"] = per_alpha;
    Json ecdf = Json::array();
    for (const auto& p : report.ecdf) ecdf.push_back({{"uniform_quantile", p.uniform_quantile}, {"value", p.value}});
    out["ecdf"] = ecdf;
    out["resampled_count"] = report.resampled_count;
    out["all_satisfied"] = report.all_satisfied();
    ok = report.all_satisfied();
  }
  print_json(out);
  return ok ? 0 : kExitAudit;
}

// ---------------------------------------------------------------------------

struct CompareFlags {
  double mu = 0.1;
  double sigma = 1.0;
  int n = 10;
  std::string assertion = "(-inf,9]";
  std::size_t reps = 1000;
  std::uint64_t posterior_draws = 100000;
  std::string summary;
};

Json dominance_json(const iminfer::DominanceCheck& d) {
  return {{"holds", d.holds}, {"worst_margin", d.worst_margin}, {"worst_at", d.worst_at}};
}

int run_compare(const CompareFlags& f, std::uint64_t seed) {
  iminfer::AuditConfig cfg;
  cfg.model = iminfer::ModelKind::NormalCv;
  cfg.truth = {0.0, f.mu, f.sigma, f.n};
  cfg.assertion = parse_assertion("--assertion", f.assertion);
  cfg.replications = f.reps;
  cfg.seed = seed;
  const iminfer::Comparison c = iminfer::compare_im_bayes(cfg, f.posterior_draws);

  std::ostringstream csv;
  csv << "quantile_uniform,im_belief,bayes_posterior\n";
  for (const auto& row : c.rows) {
    csv << iminfer::format_number(row.quantile_uniform) << ',' << iminfer::format_number(row.im_belief) << ','
        << iminfer::format_number(row.bayes_posterior) << '\n';
  }
  std::cout << csv.str();

  Json summary = config_json(cfg);
  summary.erase("alphas");
  summary.erase("draws_per_replication");
  summary["posterior_draws"] = f.posterior_draws;
  Json result{{"command", "compare"},
              {"config", summary},
              {"im_dominance_applicable", c.im_dominance_applicable},
              {"im_dominance", dominance_json(c.im)},
              {"bayes_dominance", dominance_json(c.bayes)},
              {"bayes_mass_near_one", c.bayes_mass_near_one},
              {"near_one_threshold", iminfer::kNearOne},
              {"resampled_count", c.resampled_count}};
  if (!f.summary.empty()) {
    std::ofstream out(f.summary);
    if (!out) throw UsageError("--summary: cannot write " + f.summary);
    out << result.dump(2) << '\n';
  }
  echo_seed(seed);
  std::cerr << "im_dominance=" << (c.im.holds ? "holds" : "violated")
            << " bayes_dominance=" << (c.bayes.holds ? "holds" : "violated")
            << " bayes_mass_near_one=" << iminfer::format_number(c.bayes_mass_near_one) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// Finite-frame demonstration of the belief calculus.

struct DemoFlags {
  std::string frame = "Sun,Mon,Tue,Wed,Thu,Fri,Sat";
  std::string mass;
  std::vector<std::string> queries;
};

iminfer::Subset parse_subset(const iminfer::FiniteFrame& frame, const std::string& flag, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw UsageError(flag + ": subsets are written {a,b,...}, got '" + std::string(text) + "'");
  }
  std::vector<std::string> members;
  const std::string_view body = trim(text.substr(1, text.size() - 2));
  if (!body.empty()) {
    for (auto m : split(body, ',')) members.emplace_back(trim(m));
  }
  try {
    return frame.subset_of(members);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Json subset_json(const iminfer::FiniteFrame& frame, iminfer::Subset s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (s >> i & 1U) out.push_back(frame.labels()[i]);
  }
  return out;
}

int run_discrete_demo(const DemoFlags& f, std::uint64_t seed) {
  std::vector<std::string> labels;
  for (auto l : split(f.frame, ',')) labels.emplace_back(trim(l));
  std::optional<iminfer::FiniteFrame> frame;
  try {
    frame.emplace(labels);
  } catch (const Error& e) {
    throw UsageError(std::string("--frame: ") + e.what());
  }

  // "{a}=0.3; {a,b}=0.7"; no --mass means the vacuous belief function.
  std::vector<std::pair<iminfer::Subset, double>> entries;
  if (f.mass.empty()) {
    entries.emplace_back(frame->full(), 1.0);
  } else {
    for (auto item : split(f.mass, ';')) {
      const auto eq = item.rfind('=');
      if (eq == std::string_view::npos) throw UsageError("--mass: expected {subset}=mass entries separated by ';'");
      entries.emplace_back(parse_subset(*frame, "--mass", item.substr(0, eq)),
                           parse_real("--mass", trim(item.substr(eq + 1))));
    }
  }
  const iminfer::FiniteBeliefFunction bel(iminfer::mass_from_focal_list(*frame, entries));

  std::vector<iminfer::Subset> queries;
  for (const auto& q : f.queries) queries.push_back(parse_subset(*frame, "--query", q));
  if (queries.empty()) {
    for (std::size_t i = 0; i < frame->size(); ++i) queries.push_back(iminfer::Subset{1} << i);
    queries.push_back(frame->full());
  }

  Json focal = Json::array();
  for (const auto& e : bel.mass().focal()) focal.push_back({{"set", subset_json(*frame, e.set)}, {"mass", e.mass}});
  std::vector<std::pair<iminfer::Subset, double>> distribution;
  for (const auto& e : bel.mass().focal()) distribution.emplace_back(e.set, e.mass);

  Json rows = Json::array();
  for (auto q : queries) {
    Json row{{"set", subset_json(*frame, q)},
             {"belief", iminfer::belief(bel, q)},
             {"plausibility", iminfer::plausibility(bel, q)}};
    if (frame->size() <= iminfer::kMaxOracleAtoms) {
      row["oracle_belief"] = iminfer::belief_via_random_set_oracle(*frame, distribution, q);
    }
    rows.push_back(row);
  }
  print_json({{"command", "discrete-demo"},
              {"frame", labels},
              {"focal", focal},
              {"queries", rows},
              {"seed", seed}});
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateFlags {
  double mu = 0.1;
  double sigma = 1.0;
  int n = 10;
  std::string out;
};

int run_simulate(const SimulateFlags& f, std::uint64_t seed) {
  if (!(f.sigma > 0.0) || f.n < 2) throw UsageError("--sigma/--n: need sigma > 0 and n >= 2");
  iminfer::StreamRng rng(seed, kSimulateStream);
  std::ostringstream csv;
  csv << "x\n";
  for (int i = 0; i < f.n; ++i) csv << iminfer::format_number(f.mu + f.sigma * rng.normal()) << '\n';
  if (f.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw UsageError("--out: cannot write " + f.out);
    file << csv.str();
  }
  echo_seed(seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inferential-model belief functions, plausibility intervals and validity audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "iminfer 0.1.0");

  std::uint64_t seed = iminfer::kDefaultSeed;
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  };

  BelieveFlags believe;
  auto* believe_cmd = app.add_subcommand("believe", "belief and plausibility of an assertion");
  add_observation_flags(believe_cmd, believe.obs, true);
  believe_cmd->add_option("--assertion", believe.assertion, "interval union, e.g. \"(-inf,9]\"")->required();
  believe_cmd->add_option("--draws", believe.draws, "Monte Carlo draws; 0 for the closed form")->capture_default_str();
  add_seed(believe_cmd);

  CurveFlags curve;
  auto* curve_cmd = app.add_subcommand("curve", "singleton plausibility over a theta grid (CSV)");
  add_observation_flags(curve_cmd, curve.obs, false);
  curve_cmd->add_option("--theta-grid", curve.grid, "lo:hi:points")->required();
  add_seed(curve_cmd);

  IntervalFlags interval;
  auto* interval_cmd = app.add_subcommand("interval", "plausibility region {theta : pl > alpha}");
  add_observation_flags(interval_cmd, interval.obs, true);
  interval_cmd->add_option("--alpha", interval.alpha, "level in (0,1)")->required();
  interval_cmd->add_option("--scan-grid", interval.scan_grid, "lo:hi:points in the scan coordinate; default exact");
  add_seed(interval_cmd);

  AuditFlags audit;
  auto* audit_cmd = app.add_subcommand("audit", "validity or coverage audit (exit 4 on a violated bound)");
  audit_cmd->add_option("--mode", audit.mode)->required()->check(CLI::IsMember({"validity", "coverage"}));
  audit_cmd->add_option("--model", audit.model)->required();
  audit_cmd->add_option("--theta", audit.theta, "normal-mean truth")->capture_default_str();
  audit_cmd->add_option("--mu", audit.mu, "normal-cv truth")->capture_default_str();
  audit_cmd->add_option("--sigma", audit.sigma, "normal-cv truth")->capture_default_str();
  audit_cmd->add_option("--n", audit.n, "normal-cv sample size")->capture_default_str();
  audit_cmd->add_option("--assertion", audit.assertion, "assertion for validity audits");
  audit_cmd->add_option("--reps", audit.reps)
      ->capture_default_str()
      ->check(CLI::Range(iminfer::kMinAuditReplications, std::size_t{100000000}));
  audit_cmd->add_option("--alphas", audit.alphas, "comma-separated levels")->capture_default_str();
  audit_cmd->add_option("--alpha", audit.alpha, "coverage level")->capture_default_str();
  audit_cmd->add_option("--draws", audit.draws, "belief draws per replication; 0 for the closed form")
      ->capture_default_str();
  add_seed(audit_cmd);

  CompareFlags compare;
  auto* compare_cmd = app.add_subcommand("compare", "IM belief versus default-prior posterior (CSV)");
  compare_cmd->add_option("--mu", compare.mu)->capture_default_str();
  compare_cmd->add_option("--sigma", compare.sigma)->capture_default_str()->check(CLI::PositiveNumber);
  compare_cmd->add_option("--n", compare.n)->capture_default_str()->check(CLI::Range(2, 1000000));
  compare_cmd->add_option("--assertion", compare.assertion)->capture_default_str();
  compare_cmd->add_option("--reps", compare.reps)->capture_default_str()->check(CLI::Range(2, 100000000));
  compare_cmd->add_option("--posterior-draws", compare.posterior_draws)
      ->capture_default_str()
      ->check(CLI::Range(iminfer::kMinPosteriorDraws, std::uint64_t{1} << 40));
  compare_cmd->add_option("--summary", compare.summary, "also write a JSON summary here");
  add_seed(compare_cmd);

  DemoFlags demo;
  auto* demo_cmd = app.add_subcommand("discrete-demo", "belief and plausibility on a finite frame");
  demo_cmd->add_option("--frame", demo.frame, "comma-separated atoms")->capture_default_str();
  demo_cmd->add_option("--mass", demo.mass, "{a}=0.3;{a,b}=0.7; default vacuous");
  demo_cmd->add_option("--query", demo.queries, "subset {a,b}; repeatable");
  add_seed(demo_cmd);

  SimulateFlags simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "draw a normal sample (CSV with header x)");
  simulate_cmd->add_option("--mu", simulate.mu)->capture_default_str();
  simulate_cmd->add_option("--sigma", simulate.sigma)->capture_default_str();
  simulate_cmd->add_option("--n", simulate.n)->capture_default_str();
  simulate_cmd->add_option("--out", simulate.out, "output path; default standard output");
  add_seed(simulate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*believe_cmd) return run_believe(believe, seed);
    if (*curve_cmd) return run_curve(curve, seed);
    if (*interval_cmd) return run_interval(interval, seed);
    if (*audit_cmd) return run_audit(audit, seed);
    if (*compare_cmd) return run_compare(compare, seed);
    if (*demo_cmd) return run_discrete_demo(demo, seed);
    if (*simulate_cmd) return run_simulate(simulate, seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitModel;
  }
  return kExitUsage;
}
