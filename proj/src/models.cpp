#include "iminfer/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "iminfer/error.hpp"
#include "iminfer/normal.hpp"

namespace iminfer {

namespace {

double clamp_auxiliary(double u) { return std::clamp(u, kAuxiliaryClamp, 1.0 - kAuxiliaryClamp); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset::Dataset(std::vector<double> observations) : observations_(std::move(observations)) {
  if (observations_.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "a dataset needs at least 2 observations");
  }
  for (double v : observations_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "observations must be finite");
  }
}

Dataset parse_dataset(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      if (text == "x" || text == "\"x\"") continue;
    }
    if (text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected one number, got \"" +
                                        std::string(text) + "\"");
    }
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": non-finite value");
    }
    values.push_back(v);
  }
  if (values.size() < 2) throw Error(ErrorKind::Parse, "dataset needs at least 2 observations");
  return Dataset(std::move(values));
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return parse_dataset(in);
}

SufficientStats sufficient_stats(const Dataset& data) {
  const auto obs = data.observations();
  const double n = static_cast<double>(obs.size());
  const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : obs) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw Error(ErrorKind::DegenerateSample, "all observations are equal");
  return {mean, sd, static_cast<int>(obs.size())};
}

CvStatistic cv_statistic(const SufficientStats& stats) {
  if (stats.n < 2) throw Error(ErrorKind::InvalidArgument, "n must be >= 2");
  if (!(stats.sd > 0.0)) throw Error(ErrorKind::DegenerateSample, "sample standard deviation is 0");
  const double t = std::sqrt(static_cast<double>(stats.n)) * stats.mean / stats.sd;
  if (!std::isfinite(t)) throw Error(ErrorKind::DegenerateSample, "t statistic is not finite");
  return {t, stats.n};
}

CvStatistic cv_statistic(const Dataset& data) { return cv_statistic(sufficient_stats(data)); }

// ---------------------------------------------------------------------------

double NormalMeanAssociation::forward(double theta, double u) const {
  return theta + norm_quantile(clamp_auxiliary(u));
}

double NormalMeanAssociation::auxiliary_at_scan(double x, double theta) const {
  return norm_cdf(x - theta);
}

double NormalMeanAssociation::scan_at_auxiliary(double x, double u) const {
  return x - norm_quantile(clamp_auxiliary(u));
}

NormalMeanAssociation normal_mean_association() { return {}; }

BeliefPair normal_mean_belief_closed(double x, double theta0) {
  const double twice = 2.0 * norm_cdf(theta0 - x);
  return {std::max(0.0, twice - 1.0), std::min(1.0, twice)};
}

// ---------------------------------------------------------------------------

CvAssociation::CvAssociation(int n) : n_(n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "coefficient-of-variation model needs n >= 2");
}

NoncentralTSpec CvAssociation::law(double psi) const {
  return {n_ - 1, std::sqrt(static_cast<double>(n_)) * psi};
}

double CvAssociation::forward(double theta, double u) const {
  return noncentral_t_quantile(clamp_auxiliary(u), law(to_scan(theta)));
}

double CvAssociation::auxiliary_at_scan(double t_x, double psi) const {
  if (std::isinf(psi)) return psi > 0 ? 0.0 : 1.0;
  return noncentral_t_cdf(t_x, law(psi));
}

double CvAssociation::scan_at_auxiliary(double t_x, double u) const {
  return noncentral_t_solve_noncentrality(t_x, n_ - 1, clamp_auxiliary(u)) /
         std::sqrt(static_cast<double>(n_));
}

CvAssociation cv_association(int n) { return CvAssociation(n); }

double cv_singleton_plausibility(const CvStatistic& stat, double theta) {
  if (theta == 0.0) throw Error(ErrorKind::ThetaZero, "plausibility of theta = 0 is undefined");
  const CvAssociation assoc(stat.n);
  const NoncentralTSpec spec = assoc.law(assoc.to_scan(theta));
  const double lower = noncentral_t_cdf(stat.t, spec);
  if (lower <= 0.5) return 2.0 * lower;
  return 2.0 * noncentral_t_upper(stat.t, spec);
}

double cv_singleton_plausibility_extended(const CvStatistic& stat, double theta) {
  // psi -> +inf drives the CDF to 0, psi -> -inf drives it to 1.
  if (theta == 0.0) return 0.0;
  const CvAssociation assoc(stat.n);
  const double psi = assoc.to_scan(theta);
  if (std::abs(assoc.law(psi).noncentrality) <= kMaxNoncentrality) return cv_singleton_plausibility(stat, theta);
  // Past the solver range the curve keeps falling; report 0 when the value at
  // the range edge is already negligible.
  const NoncentralTSpec edge_law{stat.n - 1, std::copysign(kMaxNoncentrality, psi)};
  const double lower = noncentral_t_cdf(stat.t, edge_law);
  const double edge = 2.0 * (lower <= 0.5 ? lower : noncentral_t_upper(stat.t, edge_law));
  if (edge < kNegligiblePlausibility) return 0.0;
  throw Error(ErrorKind::RangeExceeded, "theta = " + format_number(theta) + " needs noncentrality beyond ±100");
}

ParamSet cv_plausibility_interval(const CvStatistic& stat, double alpha) {
  return plausibility_interval_default(CvAssociation(stat.n), stat.t, alpha);
}

}  // namespace iminfer
