#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iminfer/engine.hpp"
#include "iminfer/models.hpp"
#include "iminfer/param_set.hpp"
#include "iminfer/rng.hpp"

namespace iminfer {

enum class ModelKind { NormalMean, NormalCv };

std::string_view to_string(ModelKind model);
/// "normal-mean" or "normal-cv"; throws Error(Parse) otherwise.
ModelKind parse_model_kind(std::string_view text);

inline constexpr std::uint64_t kDefaultSeed = 20160518;

/// Data-generating truth: theta for normal-mean; mu, sigma, n for normal-cv.
struct Truth {
  double theta = 0.0;
  double mu = 0.1;
  double sigma = 1.0;
  int n = 10;
};

struct AuditConfig {
  ModelKind model = ModelKind::NormalMean;
  Truth truth;
  Assertion assertion;
  std::size_t replications = 1000;
  std::vector<double> alphas{0.01, 0.05, 0.10, 0.25, 0.50};
  /// 0 evaluates beliefs in closed form; otherwise belief_mc with this many draws.
  std::uint64_t draws_per_replication = 0;
  std::uint64_t seed = kDefaultSeed;
};

inline constexpr std::size_t kMinAuditReplications = 100;

/// Truth expressed in the model's scan coordinate (theta, or psi = mu / sigma).
double true_scan_value(const AuditConfig& cfg);

/// Whether the assertion holds at the truth. For normal-cv with mu = 0 the
/// truth sits at theta = ±inf, which no assertion contains.
bool truth_in_assertion(const AuditConfig& cfg);

/// One simulated replication reduced to the model's observed statistic.
struct SimulatedData {
  double statistic;       // x for normal-mean, t_x for normal-cv
  SufficientStats stats;  // normal-cv only
  std::size_t resampled;  // degenerate draws replaced for this replication
};

/// Replication `index` of `cfg`, drawn from its own stream. Normal-cv data
/// come from xbar = mu + sigma Z / sqrt(n), S = sigma sqrt(V / (n - 1)),
/// V ~ ChiSq(n - 1); degenerate samples are redrawn from a derived stream.
SimulatedData simulate_replication(const AuditConfig& cfg, std::size_t index);

struct BeliefSamples {
  std::vector<double> values;  // replication order
  std::size_t resampled_count = 0;
};

/// b_X(A) over simulated replications. Requires a false assertion
/// (InvalidArgument otherwise) and at least kMinAuditReplications.
BeliefSamples simulate_belief_samples(const AuditConfig& cfg);

/// p_X(A) over simulated replications, for true assertions.
BeliefSamples simulate_plausibility_samples(const AuditConfig& cfg);

struct AlphaRecord {
  double alpha;
  double exceedance_rate;
  double mc_se;  // sqrt(alpha (1 - alpha) / N)
  bool bound_satisfied;
};

struct EcdfPoint {
  double uniform_quantile;  // i / (N + 1)
  double value;
};

enum class AuditForm { Belief, Plausibility };

struct AuditReport {
  AuditForm form = AuditForm::Belief;
  std::vector<AlphaRecord> per_alpha;
  std::vector<EcdfPoint> ecdf;
  std::size_t resampled_count = 0;

  bool all_satisfied() const;
};

/// Belief form: exceedance = fraction of samples with b > 1 - alpha,
/// satisfied when exceedance <= alpha + 3 se.
AuditReport validity_audit(std::span<const double> samples, std::span<const double> alphas);

/// Plausibility form for true assertions: exceedance = fraction with p <= alpha.
AuditReport plausibility_audit(std::span<const double> samples, std::span<const double> alphas);

struct CoverageReport {
  double alpha;
  double coverage_rate;
  double mc_se;  // sqrt(alpha (1 - alpha) / N)
  std::size_t replications;
  std::optional<double> fraction_unbounded;  // normal-cv only
  std::size_t resampled_count;
  bool bound_satisfied;  // coverage >= 1 - alpha - 3 se
};

/// Fraction of replications whose exact default-set plausibility region
/// {theta : p_x({theta}) > alpha} contains the truth.
CoverageReport coverage_audit(const AuditConfig& cfg, double alpha);

/// Posterior probability of A for theta = sigma / mu under the prior
/// pi(mu, sigma^2) ∝ 1 / sigma^2: sigma^2 | x ~ (n - 1) S^2 / ChiSq(n - 1),
/// mu | sigma^2, x ~ N(xbar, sigma^2 / n). Needs posterior_draws >= 1e4.
double bayes_cv_posterior_probability(const SufficientStats& stats, const Assertion& assertion,
                                      std::uint64_t posterior_draws, StreamRng& rng);
double bayes_cv_posterior_probability(const Dataset& data, const Assertion& assertion,
                                      std::uint64_t posterior_draws, StreamRng& rng);

inline constexpr std::uint64_t kMinPosteriorDraws = 10000;

/// Whether an ECDF stays on or above the diagonal: F(v) >= v - 3 se(v),
/// se(v) = sqrt(v (1 - v) / N), checked at every sample value in (0, 1)
/// and at v = 0.01, 0.02, ..., 0.99.
struct DominanceCheck {
  bool holds;
  double worst_margin;  // min of F(v) - v + 3 se(v)
  double worst_at;
};

DominanceCheck ecdf_dominance(std::span<const double> samples);

struct ComparisonRow {
  double quantile_uniform;
  double im_belief;
  double bayes_posterior;
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // each column sorted
  std::vector<double> im_belief;    // replication order
  std::vector<double> bayes_posterior;
  bool im_dominance_applicable;  // false when the truth lies in A
  DominanceCheck im;
  DominanceCheck bayes;
  double bayes_mass_near_one;  // fraction of posterior probabilities >= 0.9
  std::size_t resampled_count;
};

inline constexpr double kNearOne = 0.9;

/// IM belief and default-prior posterior probability of A on the same
/// simulated normal-cv datasets.
Comparison compare_im_bayes(const AuditConfig& cfg, std::uint64_t posterior_draws);

}  // namespace iminfer
