#include "iminfer/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "iminfer/error.hpp"
#include "iminfer/parallel.hpp"

namespace iminfer {

namespace {

constexpr std::uint64_t kReplicationRoot = 0x494D2D7265706C31ull;
constexpr std::uint64_t kBeliefTag = 0xB1;
constexpr std::uint64_t kPosteriorTag = 0xBA;

StreamRng replication_stream(const AuditConfig& cfg, std::size_t index) {
  return StreamRng(cfg.seed, kReplicationRoot).substream(index);
}

std::unique_ptr<Association> make_association(const AuditConfig& cfg) {
  if (cfg.model == ModelKind::NormalMean) return std::make_unique<NormalMeanAssociation>();
  return std::make_unique<CvAssociation>(cfg.truth.n);
}

void check_config(const AuditConfig& cfg, std::size_t min_reps) {
  if (cfg.replications < min_reps) {
    throw Error(ErrorKind::InvalidArgument,
                "at least " + std::to_string(min_reps) + " replications are required");
  }
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::InvalidArgument, "alphas must lie in (0,1)");
  }
  if (cfg.model == ModelKind::NormalCv) {
    if (cfg.truth.n < 2) throw Error(ErrorKind::InvalidArgument, "normal-cv needs n >= 2");
    if (!(cfg.truth.sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  }
}

double binomial_se(double p, std::size_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::vector<EcdfPoint> ecdf_points(std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<EcdfPoint> out;
  out.reserve(sorted.size());
  const double denom = static_cast<double>(sorted.size()) + 1.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back({static_cast<double>(i + 1) / denom, sorted[i]});
  }
  return out;
}

template <class Exceeds>
AuditReport tail_audit(AuditForm form, std::span<const double> samples, std::span<const double> alphas,
                       Exceeds exceeds) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "audit needs at least one sample");
  AuditReport report;
  report.form = form;
  const std::size_t n = samples.size();
  for (double alpha : alphas) {
    const auto hits = std::count_if(samples.begin(), samples.end(),
                                    [&](double v) { return exceeds(v, alpha); });
    const double rate = static_cast<double>(hits) / static_cast<double>(n);
    const double se = binomial_se(alpha, n);
    report.per_alpha.push_back({alpha, rate, se, rate <= alpha + 3.0 * se});
  }
  report.ecdf = ecdf_points(samples);
  return report;
}

}  // namespace

std::string_view to_string(ModelKind model) {
  return model == ModelKind::NormalMean ? "normal-mean" : "normal-cv";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "normal-mean") return ModelKind::NormalMean;
  if (text == "normal-cv") return ModelKind::NormalCv;
  throw Error(ErrorKind::Parse, "unknown model '" + std::string(text) + "'");
}

double true_scan_value(const AuditConfig& cfg) {
  if (cfg.model == ModelKind::NormalMean) return cfg.truth.theta;
  return cfg.truth.mu / cfg.truth.sigma;
}

bool truth_in_assertion(const AuditConfig& cfg) {
  if (cfg.model == ModelKind::NormalMean) return cfg.assertion.region.contains(cfg.truth.theta);
  if (cfg.truth.mu == 0.0) return false;
  return cfg.assertion.region.contains(cfg.truth.sigma / cfg.truth.mu);
}

SimulatedData simulate_replication(const AuditConfig& cfg, std::size_t index) {
  const StreamRng root = replication_stream(cfg, index);
  if (cfg.model == ModelKind::NormalMean) {
    StreamRng rng = root;
    return {cfg.truth.theta + rng.normal(), {}, 0};
  }
  const Truth& truth = cfg.truth;
  const double n = truth.n;
  for (std::size_t attempt = 0;; ++attempt) {
    StreamRng rng = attempt == 0 ? root : root.substream(attempt);
    SufficientStats stats;
    stats.n = truth.n;
    stats.mean = truth.mu + truth.sigma * rng.normal() / std::sqrt(n);
    stats.sd = truth.sigma * std::sqrt(rng.chi_square(n - 1.0) / (n - 1.0));
    const double t = std::sqrt(n) * stats.mean / stats.sd;
    if (stats.sd > 0.0 && std::isfinite(t)) return {t, stats, attempt};
    if (attempt > 1000) throw Error(ErrorKind::DegenerateSample, "simulator keeps producing degenerate samples");
  }
}

namespace {

BeliefSamples simulate_samples(const AuditConfig& cfg, bool plausibility) {
  const auto assoc = make_association(cfg);
  const DefaultRandomSet prs;
  std::vector<double> values(cfg.replications);
  std::vector<std::size_t> resampled(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t r) {
    const SimulatedData data = simulate_replication(cfg, r);
    resampled[r] = data.resampled;
    if (cfg.draws_per_replication == 0) {
      const BeliefPair bp = belief_default_closed(*assoc, data.statistic, cfg.assertion);
      values[r] = plausibility ? bp.plausibility : bp.belief;
    } else {
      const StreamRng rng = replication_stream(cfg, r).substream(kBeliefTag);
      const BeliefEstimate est =
          belief_mc(*assoc, prs, data.statistic, cfg.assertion, cfg.draws_per_replication, rng);
      values[r] = plausibility ? est.plausibility : est.belief;
    }
  });
  BeliefSamples out;
  out.values = std::move(values);
  for (std::size_t r : resampled) out.resampled_count += r;
  return out;
}

}  // namespace

BeliefSamples simulate_belief_samples(const AuditConfig& cfg) {
  check_config(cfg, kMinAuditReplications);
  if (truth_in_assertion(cfg)) {
    throw Error(ErrorKind::InvalidArgument, "validity audits need an assertion that excludes the truth");
  }
  return simulate_samples(cfg, false);
}

BeliefSamples simulate_plausibility_samples(const AuditConfig& cfg) {
  check_config(cfg, kMinAuditReplications);
  if (!truth_in_assertion(cfg)) {
    throw Error(ErrorKind::InvalidArgument, "plausibility audits need an assertion that holds at the truth");
  }
  return simulate_samples(cfg, true);
}

bool AuditReport::all_satisfied() const {
  return std::all_of(per_alpha.begin(), per_alpha.end(),
                     [](const AlphaRecord& r) { return r.bound_satisfied; });
}

AuditReport validity_audit(std::span<const double> samples, std::span<const double> alphas) {
  return tail_audit(AuditForm::Belief, samples, alphas,
                    [](double b, double alpha) { return b > 1.0 - alpha; });
}

AuditReport plausibility_audit(std::span<const double> samples, std::span<const double> alphas) {
  return tail_audit(AuditForm::Plausibility, samples, alphas,
                    [](double p, double alpha) { return p <= alpha; });
}

CoverageReport coverage_audit(const AuditConfig& cfg, double alpha) {
  check_config(cfg, kMinAuditReplications);
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0,1)");
  const auto assoc = make_association(cfg);
  const double truth = true_scan_value(cfg);

  std::vector<char> covered(cfg.replications), unbounded(cfg.replications);
  std::vector<std::size_t> resampled(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t r) {
    const SimulatedData data = simulate_replication(cfg, r);
    resampled[r] = data.resampled;
    const ParamSet region = plausibility_interval_default_scan(*assoc, data.statistic, alpha);
    covered[r] = region.contains(truth);
    unbounded[r] = !assoc->param_image(region).bounded();
  });

  const double n = static_cast<double>(cfg.replications);
  CoverageReport report;
  report.alpha = alpha;
  report.coverage_rate = static_cast<double>(std::count(covered.begin(), covered.end(), 1)) / n;
  report.mc_se = binomial_se(alpha, cfg.replications);
  report.replications = cfg.replications;
  if (cfg.model == ModelKind::NormalCv) {
    report.fraction_unbounded = static_cast<double>(std::count(unbounded.begin(), unbounded.end(), 1)) / n;
  }
  report.resampled_count = 0;
  for (std::size_t r : resampled) report.resampled_count += r;
  report.bound_satisfied = report.coverage_rate >= 1.0 - alpha - 3.0 * report.mc_se;
  return report;
}

double bayes_cv_posterior_probability(const SufficientStats& stats, const Assertion& assertion,
                                      std::uint64_t posterior_draws, StreamRng& rng) {
  if (posterior_draws < kMinPosteriorDraws) {
    throw Error(ErrorKind::InvalidArgument, "posterior_draws must be at least 10000");
  }
  if (!(stats.sd > 0.0)) throw Error(ErrorKind::DegenerateSample, "sample standard deviation is 0");
  const double n = stats.n;
  const double scale = (n - 1.0) * stats.sd * stats.sd;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < posterior_draws; ++i) {
    const double variance = scale / rng.chi_square(n - 1.0);
    const double mu = stats.mean + std::sqrt(variance / n) * rng.normal();
    if (assertion.region.contains(std::sqrt(variance) / mu)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(posterior_draws);
}

double bayes_cv_posterior_probability(const Dataset& data, const Assertion& assertion,
                                      std::uint64_t posterior_draws, StreamRng& rng) {
  return bayes_cv_posterior_probability(sufficient_stats(data), assertion, posterior_draws, rng);
}

DominanceCheck ecdf_dominance(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "dominance check needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  std::vector<double> points;
  for (int k = 1; k <= 99; ++k) points.push_back(k / 100.0);
  for (double v : sorted) {
    if (v > 0.0 && v < 1.0) points.push_back(v);
  }

  DominanceCheck check{true, std::numeric_limits<double>::infinity(), 0.0};
  for (double v : points) {
    const double ecdf =
        static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) / n;
    const double margin = ecdf - v + 3.0 * std::sqrt(v * (1.0 - v) / n);
    if (margin < check.worst_margin) {
      check.worst_margin = margin;
      check.worst_at = v;
    }
  }
  check.holds = check.worst_margin >= 0.0;
  return check;
}

Comparison compare_im_bayes(const AuditConfig& cfg, std::uint64_t posterior_draws) {
  if (cfg.model != ModelKind::NormalCv) {
    throw Error(ErrorKind::InvalidArgument, "the Bayes comparison is defined for normal-cv only");
  }
  check_config(cfg, 2);
  if (posterior_draws < kMinPosteriorDraws) {
    throw Error(ErrorKind::InvalidArgument, "posterior_draws must be at least 10000");
  }
  const CvAssociation assoc(cfg.truth.n);

  Comparison out;
  out.im_belief.resize(cfg.replications);
  out.bayes_posterior.resize(cfg.replications);
  std::vector<std::size_t> resampled(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t r) {
    const SimulatedData data = simulate_replication(cfg, r);
    resampled[r] = data.resampled;
    out.im_belief[r] = belief_default_closed(assoc, data.statistic, cfg.assertion).belief;
    StreamRng posterior = replication_stream(cfg, r).substream(kPosteriorTag);
    out.bayes_posterior[r] =
        bayes_cv_posterior_probability(data.stats, cfg.assertion, posterior_draws, posterior);
  });

  std::vector<double> im = out.im_belief, bayes = out.bayes_posterior;
  std::sort(im.begin(), im.end());
  std::sort(bayes.begin(), bayes.end());
  const double denom = static_cast<double>(cfg.replications) + 1.0;
  for (std::size_t i = 0; i < cfg.replications; ++i) {
    out.rows.push_back({static_cast<double>(i + 1) / denom, im[i], bayes[i]});
  }
  out.im_dominance_applicable = !truth_in_assertion(cfg);
  out.im = ecdf_dominance(out.im_belief);
  out.bayes = ecdf_dominance(out.bayes_posterior);
  out.bayes_mass_near_one =
      static_cast<double>(std::count_if(bayes.begin(), bayes.end(), [](double v) { return v >= kNearOne; })) /
      static_cast<double>(cfg.replications);
  out.resampled_count = 0;
  for (std::size_t r : resampled) out.resampled_count += r;
  return out;
}

}  // namespace iminfer
