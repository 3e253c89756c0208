#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "iminfer/engine.hpp"
#include "iminfer/noncentral_t.hpp"
#include "iminfer/param_set.hpp"

namespace iminfer {

/// Observed sample, n >= 2 finite values.
class Dataset {
 public:
  /// Throws InvalidArgument for fewer than 2 or non-finite observations.
  explicit Dataset(std::vector<double> observations);

  std::span<const double> observations() const noexcept { return observations_; }
  std::size_t size() const noexcept { return observations_.size(); }

 private:
  std::vector<double> observations_;
};

/// One value per line, or a single-column CSV whose header is "x". Blank
/// lines are skipped. Throws Error(Parse) on malformed or non-finite values.
Dataset parse_dataset(std::istream& in);
Dataset read_dataset(const std::filesystem::path& path);

struct SufficientStats {
  double mean;
  double sd;  // divisor n - 1
  int n;
};

/// Throws DegenerateSample when the sample standard deviation is 0.
SufficientStats sufficient_stats(const Dataset& data);

struct CvStatistic {
  double t;  // sqrt(n) * mean / sd
  int n;
};

CvStatistic cv_statistic(const Dataset& data);
CvStatistic cv_statistic(const SufficientStats& stats);

// ---------------------------------------------------------------------------
// Normal mean, unit variance: X = theta + Phi^{-1}(U).

class NormalMeanAssociation final : public Association {
 public:
  double forward(double theta, double u) const override;
  ScanScale scan_scale() const override { return ScanScale::Identity; }
  double auxiliary_at_scan(double x, double theta) const override;
  double scan_at_auxiliary(double x, double u) const override;
};

NormalMeanAssociation normal_mean_association();

/// Auxiliary values are kept this far from 0 and 1 before inversion.
inline constexpr double kAuxiliaryClamp = 1e-15;

/// Default-set belief and plausibility of (-inf, theta0] given x.
BeliefPair normal_mean_belief_closed(double x, double theta0);

// ---------------------------------------------------------------------------
// Normal coefficient of variation theta = sigma / mu, through the marginal
// association sqrt(n) xbar / S = F^{-1}_{n, 1/theta}(U), where F_{n,psi} is
// the non-central t CDF with n - 1 degrees of freedom and noncentrality
// sqrt(n) psi. The scan coordinate is psi = 1/theta, and the observed
// statistic is t_x.

class CvAssociation final : public Association {
 public:
  /// Throws InvalidArgument for n < 2.
  explicit CvAssociation(int n);

  int n() const noexcept { return n_; }

  double forward(double theta, double u) const override;
  ScanScale scan_scale() const override { return ScanScale::Reciprocal; }
  /// F_{n,psi}(t_x); psi = 0 is the central t CDF.
  double auxiliary_at_scan(double t_x, double psi) const override;
  /// psi with F_{n,psi}(t_x) = u.
  double scan_at_auxiliary(double t_x, double u) const override;

  NoncentralTSpec law(double psi) const;

 private:
  int n_;
};

CvAssociation cv_association(int n);

/// p_x({theta}) = 1 - |2 F_{n,1/theta}(t_x) - 1|. Throws ThetaZero.
double cv_singleton_plausibility(const CvStatistic& stat, double theta);

/// Same, except theta = 0 takes its one-sided limits (both 0 for finite
/// t_x), and theta so close to 0 that the noncentrality leaves the solver
/// range gives 0 when the curve at the range edge is already below
/// kNegligiblePlausibility. Used for plotted curves.
inline constexpr double kNegligiblePlausibility = 1e-12;
double cv_singleton_plausibility_extended(const CvStatistic& stat, double theta);

/// {theta : alpha/2 < F_{n,1/theta}(t_x) < 1 - alpha/2}: one bounded open
/// interval, or two unbounded pieces when the psi-interval straddles 0.
ParamSet cv_plausibility_interval(const CvStatistic& stat, double alpha);

}  // namespace iminfer
