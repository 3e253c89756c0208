// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance_test <path-to-iminfer-cli>

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iminfer/audit.hpp"
#include "iminfer/belief_core.hpp"
#include "iminfer/engine.hpp"
#include "iminfer/error.hpp"
#include "iminfer/models.hpp"
#include "iminfer/noncentral_t.hpp"
#include "iminfer/param_set.hpp"
#include "nct_oracle_table.hpp"

namespace {

using namespace iminfer;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_.size() < 3) failures_.push_back(what);
    }
  }
  Outcome outcome(std::string summary) const {
    for (const auto& f : failures_) summary += "; failed: " + f;
    return {pass_, summary};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

Assertion assertion(const std::string& text) { return {parse_param_set(text), text}; }

// ---------------------------------------------------------------------------

Outcome validity_suite() {
  struct Case {
    ModelKind model;
    Truth truth;
    std::string region;
  };
  const Truth cv_truth{0.0, 0.1, 1.0, 10};
  const std::vector<Case> cases{
      {ModelKind::NormalMean, {0.0}, "(-inf,0)"},
      {ModelKind::NormalMean, {0.0}, "(-inf,-0.1) u (0.1,inf)"},
      {ModelKind::NormalMean, {0.0}, "(-inf,0) u (0,inf)"},
      {ModelKind::NormalMean, {1.0}, "(1,inf)"},
      {ModelKind::NormalMean, {1.0}, "(-inf,0.8) u (1.2,inf)"},
      {ModelKind::NormalMean, {1.0}, "(-inf,1) u (1,inf)"},
      {ModelKind::NormalCv, cv_truth, "(-inf,9]"},
      {ModelKind::NormalCv, cv_truth, "(-inf,9) u (11,inf)"},
      {ModelKind::NormalCv, cv_truth, "(-inf,10) u (10,inf)"},
  };
  Tally tally;
  double worst_slack = 1.0;
  std::size_t cells = 0;
  for (const auto& c : cases) {
    AuditConfig cfg;
    cfg.model = c.model;
    cfg.truth = c.truth;
    cfg.assertion = assertion(c.region);
    cfg.replications = 1000;
    const auto samples = simulate_belief_samples(cfg);
    const auto report = validity_audit(samples.values, cfg.alphas);
    for (const auto& r : report.per_alpha) {
      ++cells;
      worst_slack = std::min(worst_slack, r.alpha + 3 * r.mc_se - r.exceedance_rate);
      tally.check(r.bound_satisfied, std::string(to_string(c.model)) + " " + c.region + " alpha " + fmt(r.alpha));
    }
  }
  return tally.outcome(std::to_string(cases.size()) + " assertions, " + std::to_string(cells) +
                       " (assertion, alpha) cells, min slack " + fmt(worst_slack));
}

Outcome coverage_suite() {
  Tally tally;
  AuditConfig nm;
  nm.model = ModelKind::NormalMean;
  nm.replications = 2000;
  const auto a = coverage_audit(nm, 0.05);
  tally.check(std::abs(a.coverage_rate - 0.95) <= 3 * a.mc_se, "normal-mean coverage " + fmt(a.coverage_rate));

  AuditConfig cv;
  cv.model = ModelKind::NormalCv;
  cv.replications = 2000;
  cv.truth = {0.0, 1.0, 1.0, 30};
  const auto b = coverage_audit(cv, 0.05);
  tally.check(b.coverage_rate >= 0.95 - 3 * b.mc_se, "cv mu=1 coverage " + fmt(b.coverage_rate));
  cv.truth.mu = 0.0;
  const auto c = coverage_audit(cv, 0.05);
  tally.check(c.coverage_rate >= 0.95 - 3 * c.mc_se, "cv mu=0 coverage " + fmt(c.coverage_rate));
  tally.check(c.fraction_unbounded.value_or(0.0) > 0.0, "cv mu=0 fraction_unbounded");
  return tally.outcome("normal-mean " + fmt(a.coverage_rate) + ", cv mu=1 " + fmt(b.coverage_rate) + ", cv mu=0 " +
                       fmt(c.coverage_rate) + " with fraction_unbounded " + fmt(c.fraction_unbounded.value_or(0)));
}

Outcome oracle_equivalence() {
  Tally tally;
  std::mt19937_64 gen(kDefaultSeed);
  std::uniform_real_distribution<double> x_dist(-3, 3), shift(-2.5, 2.5);
  const auto nm = normal_mean_association();
  const auto prs = default_random_set();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = x_dist(gen), theta0 = x + shift(gen);
    const std::string text = "(-inf," + format_number(theta0) + "]";
    const auto mc = belief_mc(nm, prs, x, assertion(text), 100000, StreamRng(kDefaultSeed, i));
    const auto exact = normal_mean_belief_closed(x, theta0);
    const double db = std::abs(mc.belief - exact.belief), dp = std::abs(mc.plausibility - exact.plausibility);
    if (mc.belief_mc_se > 0) worst = std::max(worst, db / mc.belief_mc_se);
    if (mc.plausibility_mc_se > 0) worst = std::max(worst, dp / mc.plausibility_mc_se);
    tally.check(db <= 3 * mc.belief_mc_se + 1e-12, "belief at x=" + fmt(x) + " theta0=" + fmt(theta0));
    tally.check(dp <= 3 * mc.plausibility_mc_se + 1e-12, "plausibility at x=" + fmt(x) + " theta0=" + fmt(theta0));
  }
  std::uniform_real_distribution<double> t_dist(-4, 4), theta_dist(0.3, 20), sign(-1, 1);
  std::uniform_int_distribution<int> n_dist(3, 40);
  for (int i = 0; i < 20; ++i) {
    const CvStatistic stat{t_dist(gen), n_dist(gen)};
    const double theta = std::copysign(theta_dist(gen), sign(gen));
    const auto cv = cv_association(stat.n);
    const auto mc = belief_mc(cv, prs, stat.t, {ParamSet::point(theta), "point"}, 100000, StreamRng(kDefaultSeed, 100 + i));
    const double exact = cv_singleton_plausibility(stat, theta);
    const double d = std::abs(mc.plausibility - exact);
    if (mc.plausibility_mc_se > 0) worst = std::max(worst, d / mc.plausibility_mc_se);
    tally.check(d <= 3 * mc.plausibility_mc_se + 1e-12, "cv plausibility at t=" + fmt(stat.t) + " theta=" + fmt(theta));
  }
  return tally.outcome("50 normal-mean (belief, plausibility) pairs, 20 cv singleton plausibilities, worst |diff|/se " +
                       fmt(worst, 3));
}

Outcome noncentral_t_certification() {
  Tally tally;
  double worst_central = 0.0;
  for (int dof : {1, 2, 3, 5, 9, 29, 99}) {
    const boost::math::students_t_distribution<double> ref(dof);
    for (double t = -25; t <= 25; t += 0.5) {
      const double d = std::abs(noncentral_t_cdf(t, {dof, 0.0}) - boost::math::cdf(ref, t));
      worst_central = std::max(worst_central, d);
    }
  }
  tally.check(worst_central <= 1e-10, "central t max error " + fmt(worst_central));

  double worst_oracle = 0.0;
  for (const auto& row : testing::kNctOracle) {
    const double d = std::abs(noncentral_t_cdf(row.t, {row.dof, row.delta}) - row.p);
    worst_oracle = std::max(worst_oracle, d / row.se);
    tally.check(d <= 3 * row.se, "oracle at t=" + fmt(row.t) + " dof=" + std::to_string(row.dof));
  }

  // Round trips at points whose CDF value is resolvable in double precision
  // (within [1e-6, 1 - 1e-6]); other draws are replaced.
  std::mt19937_64 gen(kDefaultSeed);
  std::uniform_real_distribution<double> t_dist(-5, 5), d_dist(-5, 5);
  std::uniform_int_distribution<int> dof_dist(1, 60);
  double worst_trip = 0.0;
  for (int i = 0; i < 100;) {
    const double t = t_dist(gen), delta = d_dist(gen);
    const int dof = dof_dist(gen);
    const double p = noncentral_t_cdf(t, {dof, delta});
    if (p < 1e-6 || p > 1 - 1e-6) continue;
    ++i;
    const double d = std::abs(noncentral_t_solve_noncentrality(t, dof, p) - delta);
    worst_trip = std::max(worst_trip, d);
    tally.check(d <= 1e-6, "round trip at t=" + fmt(t) + " dof=" + std::to_string(dof) + " delta=" + fmt(delta));
  }
  return tally.outcome("central max error " + fmt(worst_central, 3) + ", 20 oracle points worst " +
                       fmt(worst_oracle, 3) + " se, 100 round trips worst " + fmt(worst_trip, 3));
}

Outcome im_versus_bayes() {
  AuditConfig cfg;
  cfg.model = ModelKind::NormalCv;
  cfg.truth = {0.0, 0.1, 1.0, 10};
  cfg.assertion = assertion("(-inf,9]");
  cfg.replications = 1000;
  const Comparison c = compare_im_bayes(cfg, 100000);
  // A valid procedure puts at most 10% of its mass above 0.9, up to noise.
  const double n = static_cast<double>(cfg.replications);
  const double near_one_limit = 0.1 + 3 * std::sqrt(0.1 * 0.9 / n);
  Tally tally;
  tally.check(c.im_dominance_applicable && c.im.holds, "IM dominance, margin " + fmt(c.im.worst_margin));
  tally.check(!c.bayes.holds, "Bayes dominance should fail");
  tally.check(c.bayes_mass_near_one > near_one_limit, "Bayes mass near 1 " + fmt(c.bayes_mass_near_one));
  return tally.outcome("IM worst margin " + fmt(c.im.worst_margin, 3) + ", Bayes worst margin " +
                       fmt(c.bayes.worst_margin, 3) + " at " + fmt(c.bayes.worst_at, 3) +
                       ", Bayes fraction >= 0.9: " + fmt(c.bayes_mass_near_one, 3) + " (valid limit " +
                       fmt(near_one_limit, 3) + ")");
}

Outcome plausibility_shapes(const std::string& data_dir) {
  Tally tally;
  std::string summary;
  for (const auto& [name, want_bounded] : {std::pair{"cv_mu1_n30.csv", true}, std::pair{"cv_mu0_n30.csv", false}}) {
    const CvStatistic stat = cv_statistic(read_dataset(data_dir + "/" + name));
    const ParamSet region = cv_plausibility_interval(stat, 0.05);
    tally.check(region.bounded() == want_bounded, std::string(name) + " region " + format_param_set(region));
    const double mode = 1.0 / cv_association(stat.n).scan_at_auxiliary(stat.t, 0.5);
    const double peak = cv_singleton_plausibility(stat, mode);
    tally.check(std::abs(peak - 1.0) <= 1e-9, std::string(name) + " peak " + fmt(peak, 12));
    double grid_max = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double theta = -20.0 + 0.01 * i;
      grid_max = std::max(grid_max, cv_singleton_plausibility_extended(stat, theta));
    }
    tally.check(grid_max <= 1.0 && grid_max > 0.98, std::string(name) + " grid max " + fmt(grid_max));
    summary += std::string(summary.empty() ? "" : "; ") + name + ": 95% region " + format_param_set(region) +
               ", peak " + fmt(peak, 12) + " at theta " + fmt(mode);
  }
  return tally.outcome(summary);
}

Outcome belief_core_suite() {
  Tally tally;
  std::mt19937_64 gen(kDefaultSeed);
  std::size_t functions = 0, checks = 0;
  for (std::size_t size = 1; size <= 4; ++size) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < size; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    const FiniteFrame frame(labels);
    const Subset full = frame.full();
    std::uniform_int_distribution<Subset> subset_dist(1, full);
    std::uniform_int_distribution<int> count_dist(1, static_cast<int>(std::min<Subset>(full, 6)));
    std::gamma_distribution<double> weight(1.0);
    for (int rep = 0; rep < 200; ++rep, ++functions) {
      std::vector<std::pair<Subset, double>> entries;
      double total = 0.0;
      for (int k = count_dist(gen); k > 0; --k) {
        const double w = weight(gen) + 1e-3;
        entries.emplace_back(subset_dist(gen), w);
        total += w;
      }
      for (auto& e : entries) e.second /= total;
      const FiniteBeliefFunction f(mass_from_focal_list(frame, entries));
      std::vector<std::pair<Subset, double>> distribution;
      for (const auto& e : f.mass().focal()) distribution.emplace_back(e.set, e.mass);

      for (Subset a = 0; a <= full; ++a) {
        const double ba = belief(f, a);
        const Subset ac = frame.complement(a);
        ++checks;
        tally.check(plausibility(f, a) == 1.0 - belief(f, ac), "complement identity");
        tally.check(ba + belief(f, ac) <= 1.0 + 1e-12, "super-additivity");
        tally.check(ba <= plausibility(f, a) + 1e-12, "belief <= plausibility");
        tally.check(std::abs(ba - belief_via_random_set_oracle(frame, distribution, a)) <= 1e-12, "oracle");
        for (Subset b = 0; b <= full; ++b) {
          const double bb = belief(f, b);
          if ((a & ~b) == 0) tally.check(ba <= bb + 1e-12, "monotonicity");
          tally.check(belief(f, a | b) + belief(f, a & b) >= ba + bb - 1e-12, "2-monotonicity");
        }
      }
      tally.check(belief(f, 0) == 0.0 && std::abs(belief(f, full) - 1.0) <= 1e-12, "empty and full");
    }
  }
  return tally.outcome(std::to_string(functions) + " mass functions on frames of size 1-4, " +
                       std::to_string(checks) + " subsets, all subset pairs for monotonicity");
}

// ---------------------------------------------------------------------------

struct Captured {
  int status;
  std::string output;
};

Captured capture(const std::string& command) {
  Captured c{-1, {}};
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return c;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.output.append(buf.data(), got);
  c.status = ::pclose(pipe);
  return c;
}

Outcome cli_determinism(const std::string& cli, const std::string& data_dir) {
  const std::string small = data_dir + "/cv_mu0.1_n10.csv";
  const std::string mu0 = data_dir + "/cv_mu0_n30.csv";
  const std::vector<std::string> commands{
      "believe --model normal-mean --x 0 --assertion '(-inf,1.959964]' --draws 100000",
      "believe --model normal-cv --data " + small + " --assertion '(-inf,9]' --draws 50000",
      "believe --model normal-cv --data " + small + " --assertion '(-inf,9]' --draws 0",
      "curve --model normal-cv --data " + mu0 + " --theta-grid -20:20:801",
      "interval --model normal-cv --data " + mu0 + " --alpha 0.05",
      "interval --model normal-mean --x 0.4 --alpha 0.1 --scan-grid -10:10:101",
      "audit --mode validity --model normal-cv --assertion '(-inf,9]' --reps 1000",
      "audit --mode validity --model normal-mean --theta 0 --assertion '(-inf,0)' --reps 200 --draws 3000",
      "audit --mode coverage --model normal-cv --mu 0 --n 30 --reps 500",
      "compare --reps 50 --posterior-draws 20000",
      "discrete-demo --frame a,b,c --mass '{a}=0.3;{a,b}=0.5;{a,b,c}=0.2'",
      "simulate --mu 1 --n 30",
  };
  Tally tally;
  for (const auto& args : commands) {
    std::vector<Captured> runs;
    for (const char* threads : {"1", "1", "4", "7"}) {
      runs.push_back(capture("IM_INFER_THREADS=" + std::string(threads) + " " + cli + " " + args + " 2>&1"));
    }
    const std::string name = args.substr(0, args.find(' '));
    tally.check(runs[0].status == 0 && !runs[0].output.empty(), name + " ran");
    for (const auto& r : runs) tally.check(r.status == runs[0].status && r.output == runs[0].output, args);
  }
  return tally.outcome(std::to_string(commands.size()) +
                       " invocations covering all 7 subcommands, each run 4 times (IM_INFER_THREADS 1,1,4,7), "
                       "stdout and stderr compared byte for byte");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_test <iminfer-cli> [data-dir]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data_dir = argc > 2 ? argv[2] : IMINFER_DATA_DIR;

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "validity suite", validity_suite},
      {2, "coverage suite", coverage_suite},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "non-central t certification", noncentral_t_certification},
      {5, "IM versus Bayes quantile comparison", im_versus_bayes},
      {6, "plausibility curve shapes", [&] { return plausibility_shapes(data_dir); }},
      {7, "belief-core exhaustive suite", belief_core_suite},
      {8, "CLI determinism", [&] { return cli_determinism(cli, data_dir); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
              << " (" << fmt(secs, 3) << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
