#include "iminfer/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "iminfer/error.hpp"
#include "iminfer/parallel.hpp"

namespace iminfer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binomial_se(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double default_containment(double u) {
  if (!(u >= 0.0 && u <= 1.0)) return 0.0;
  return 1.0 - std::abs(2.0 * u - 1.0);
}

// Supremum of the default-set singleton plausibility over a theta-set. The
// auxiliary map is monotone in the scan coordinate, so on each closed scan
// component the plausibility is unimodal with its peak where u = 1/2.
double sup_plausibility(const Association& assoc, double x, const ParamSet& theta_set) {
  const ParamSet scan = assoc.scan_image(theta_set.closure()).closure();
  double best = 0.0;
  for (const auto& c : scan.components()) {
    const double ua = assoc.auxiliary_at_scan(x, c.lo);
    const double ub = assoc.auxiliary_at_scan(x, c.hi);
    if ((ua - 0.5) * (ub - 0.5) <= 0.0) return 1.0;
    best = std::max({best, default_containment(ua), default_containment(ub)});
  }
  return best;
}


}  // namespace

AuxiliaryInterval AuxiliaryInterval::make(double lo, double hi) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "auxiliary interval needs 0 <= lo <= hi <= 1");
  }
  return {lo, hi};
}

AuxiliaryInterval DefaultRandomSet::sample(StreamRng& rng) const {
  const double radius = std::abs(rng.uniform() - 0.5);
  return {0.5 - radius, 0.5 + radius};
}

double DefaultRandomSet::containment_probability(double u) const { return default_containment(u); }

DefaultRandomSet default_random_set() { return {}; }

// ---------------------------------------------------------------------------

double Association::to_scan(double theta) const {
  if (scan_scale() == ScanScale::Identity) return theta;
  if (theta == 0.0) throw Error(ErrorKind::ThetaZero, "theta = 0 has no reciprocal");
  if (std::isinf(theta)) return 0.0;
  return 1.0 / theta;
}

ParamSet Association::scan_image(const ParamSet& theta_set) const {
  return scan_scale() == ScanScale::Identity ? theta_set : reciprocal_image(theta_set);
}

ParamSet Association::param_image(const ParamSet& scan_set) const {
  return scan_scale() == ScanScale::Identity ? scan_set : reciprocal_image(scan_set);
}

ParamSet Association::focal_param_set(double x, const AuxiliaryInterval& s) const {
  const double a = scan_at_auxiliary(x, s.lo);
  const double b = scan_at_auxiliary(x, s.hi);
  ParamSet focal = param_image(ParamSet::closed(std::min(a, b), std::max(a, b)));
  if (focal.empty()) {
    throw Error(ErrorKind::EmptyFocalSet, "random set realization [" + format_number(s.lo) + ", " +
                                              format_number(s.hi) + "] maps to no parameter value");
  }
  return focal;
}

// ---------------------------------------------------------------------------

AuxiliaryTests auxiliary_tests(const Association& assoc, double x, const Assertion& assertion) {
  // Scan-coordinate sets the focal interval must lie in (support) or meet
  // (no contradiction). On the reciprocal scale psi = 0 is theta = ±inf: a
  // focal set through it is unbounded, so it lies in the interior of A
  // only when A's interior contains both tails.
  const ParamSet inner = assertion.region.interior();
  ParamSet support = assoc.scan_image(inner);
  if (assoc.scan_scale() == ScanScale::Reciprocal) {
    const auto& parts = inner.components();
    if (!parts.empty() && parts.front().lo == -kInf && parts.back().hi == kInf) {
      support = support.unite(ParamSet::point(0.0));
    }
  }
  const ParamSet meet = assoc.scan_image(assertion.region.closure()).closure();

  auto to_auxiliary = [&](const ParamSet& scan) {
    std::vector<Interval> out;
    for (const auto& c : scan.components()) {
      Interval u{assoc.auxiliary_at_scan(x, c.lo), assoc.auxiliary_at_scan(x, c.hi), c.lo_closed, c.hi_closed};
      if (u.lo > u.hi) {
        std::swap(u.lo, u.hi);
        std::swap(u.lo_closed, u.hi_closed);
      }
      out.push_back(u);
    }
    return out;
  };
  return {to_auxiliary(support), to_auxiliary(meet)};
}

bool AuxiliaryTests::supports(const AuxiliaryInterval& s) const {
  // Support pieces are separated by gaps, so the connected realization
  // must sit inside a single piece.
  return std::any_of(support.begin(), support.end(),
                     [&](const Interval& c) { return c.contains(s.lo) && c.contains(s.hi); });
}

bool AuxiliaryTests::meets(const AuxiliaryInterval& s) const {
  return std::any_of(meet.begin(), meet.end(), [&](const Interval& c) { return c.lo <= s.hi && c.hi >= s.lo; });
}

BeliefEstimate belief_mc(const Association& assoc, const PredictiveRandomSet& prs, double x,
                         const Assertion& assertion, std::uint64_t draws, const StreamRng& rng) {
  if (draws == 0) throw Error(ErrorKind::InvalidArgument, "draws must be positive");

  const AuxiliaryTests tests = auxiliary_tests(assoc, x, assertion);
  const std::uint64_t blocks = (draws + kBeliefBlockDraws - 1) / kBeliefBlockDraws;
  std::vector<std::uint64_t> contained(blocks, 0), touching(blocks, 0);

  parallel_for(blocks, [&](std::size_t b) {
    StreamRng stream = rng.substream(b);
    const std::uint64_t begin = b * kBeliefBlockDraws;
    const std::uint64_t end = std::min(draws, begin + kBeliefBlockDraws);
    std::uint64_t in = 0, hit = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const AuxiliaryInterval s = prs.sample(stream);
      in += tests.supports(s);
      hit += tests.meets(s);
    }
    contained[b] = in;
    touching[b] = hit;
  });

  std::uint64_t in = 0, hit = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    in += contained[b];
    hit += touching[b];
  }
  const double n = static_cast<double>(draws);
  const double bel = static_cast<double>(in) / n;
  const double pl = static_cast<double>(hit) / n;
  return {bel, pl, draws, binomial_se(bel, draws), binomial_se(pl, draws)};
}

BeliefPair belief_default_closed(const Association& assoc, double x, const Assertion& assertion) {
  const double against = sup_plausibility(assoc, x, assertion.region.complement());
  const double toward = sup_plausibility(assoc, x, assertion.region);
  return {1.0 - against, toward};
}

double singleton_plausibility(const Association& assoc, const PredictiveRandomSet& prs, double x,
                              double theta) {
  return prs.containment_probability(assoc.auxiliary_at(x, theta));
}

ParamSet plausibility_region(const Association& assoc, const PredictiveRandomSet& prs, double x,
                             double alpha, const ScanGrid& grid) {
  if (grid.points < 2 || !(grid.lo < grid.hi)) {
    throw Error(ErrorKind::DegenerateGrid, "grid needs at least 2 points over a non-empty range");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be in (0,1)");

  auto above = [&](double s) {
    return prs.containment_probability(assoc.auxiliary_at_scan(x, s)) > alpha;
  };
  auto node = [&](std::size_t i) {
    if (i + 1 == grid.points) return grid.hi;
    return grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) / static_cast<double>(grid.points - 1);
  };
  // Bisect between a grid pair whose membership differs.
  auto crossing = [&](double outside, double inside) {
    while (std::abs(inside - outside) > kRegionTolerance) {
      const double mid = 0.5 * (outside + inside);
      (above(mid) ? inside : outside) = mid;
    }
    return 0.5 * (outside + inside);
  };

  std::vector<Interval> pieces;
  bool prev_in = above(grid.lo);
  double start = grid.lo;
  bool start_closed = true;
  for (std::size_t i = 1; i < grid.points; ++i) {
    const double s = node(i);
    const bool in = above(s);
    if (in && !prev_in) {
      start = crossing(node(i - 1), s);
      start_closed = false;
    } else if (!in && prev_in) {
      pieces.push_back({start, crossing(s, node(i - 1)), start_closed, false});
    }
    prev_in = in;
  }
  if (prev_in) pieces.push_back({start, grid.hi, start_closed, true});
  return assoc.param_image(ParamSet::from_intervals(std::move(pieces)));
}

ParamSet plausibility_interval_default_scan(const Association& assoc, double x, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be in (0,1)");
  const double a = assoc.scan_at_auxiliary(x, 0.5 * alpha);
  const double b = assoc.scan_at_auxiliary(x, 1.0 - 0.5 * alpha);
  return ParamSet::open(std::min(a, b), std::max(a, b));
}

ParamSet plausibility_interval_default(const Association& assoc, double x, double alpha) {
  return assoc.param_image(plausibility_interval_default_scan(assoc, x, alpha));
}

}  // namespace iminfer
