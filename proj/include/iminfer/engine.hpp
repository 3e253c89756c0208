#pragma once

#include <cstdint>
#include <vector>

#include "iminfer/param_set.hpp"
#include "iminfer/rng.hpp"

namespace iminfer {

/// One realization of a predictive random set on the auxiliary space (0,1).
struct AuxiliaryInterval {
  double lo;
  double hi;

  /// Throws InvalidArgument unless 0 <= lo <= hi <= 1.
  static AuxiliaryInterval make(double lo, double hi);
  static AuxiliaryInterval degenerate(double u) { return make(u, u); }
};

class PredictiveRandomSet {
 public:
  virtual ~PredictiveRandomSet() = default;
  virtual AuxiliaryInterval sample(StreamRng& rng) const = 0;
  /// P(S contains u), exact.
  virtual double containment_probability(double u) const = 0;
};

/// Centered intervals {u : |u - 0.5| <= |W - 0.5|}, W ~ Unif(0,1).
class DefaultRandomSet final : public PredictiveRandomSet {
 public:
  AuxiliaryInterval sample(StreamRng& rng) const override;
  double containment_probability(double u) const override;
};

DefaultRandomSet default_random_set();

/// How the parameter is laid out for scanning and root finding. Models pick
/// the coordinate in which the auxiliary map is continuous and monotone on
/// the whole line: theta itself, or psi = 1/theta.
enum class ScanScale { Identity, Reciprocal };

/// Scalar association X = a(theta, U), U ~ Unif(0,1), for models where the
/// auxiliary value solving x = a(theta, u) is continuous and strictly
/// monotone in the scan coordinate.
class Association {
 public:
  virtual ~Association() = default;

  virtual double forward(double theta, double u) const = 0;

  virtual ScanScale scan_scale() const = 0;

  /// u solving x = a(theta(s), u). The scan coordinate may be ±inf.
  virtual double auxiliary_at_scan(double x, double s) const = 0;

  /// Inverse of auxiliary_at_scan in s.
  virtual double scan_at_auxiliary(double x, double u) const = 0;

  /// Theta-set consistent with x and some u in `s`; throws EmptyFocalSet
  /// when no parameter value qualifies.
  virtual ParamSet focal_param_set(double x, const AuxiliaryInterval& s) const;

  /// Throws ThetaZero for theta = 0 on the reciprocal scale.
  double to_scan(double theta) const;
  double auxiliary_at(double x, double theta) const { return auxiliary_at_scan(x, to_scan(theta)); }

  /// Maps theta-sets to scan-coordinate sets and back. Both maps are the
  /// identity or the reciprocal image, so they are their own inverses.
  ParamSet scan_image(const ParamSet& theta_set) const;
  ParamSet param_image(const ParamSet& scan_set) const;
};

struct BeliefEstimate {
  double belief;
  double plausibility;
  std::uint64_t draws;
  double belief_mc_se;
  double plausibility_mc_se;
};

struct BeliefPair {
  double belief;
  double plausibility;
};

/// An assertion carried to the auxiliary space for one observation. A
/// realization S supports A when the closure of its focal set lies in the
/// interior of A, and fails to contradict A when that closure meets the
/// closure of A. Because the auxiliary map is monotone in the scan
/// coordinate, both reduce to comparing S with a few auxiliary values.
struct AuxiliaryTests {
  std::vector<Interval> support;
  std::vector<Interval> meet;

  bool supports(const AuxiliaryInterval& s) const;
  bool meets(const AuxiliaryInterval& s) const;
};

AuxiliaryTests auxiliary_tests(const Association& assoc, double x, const Assertion& assertion);

/// Monte Carlo belief and plausibility of `assertion` from `draws`
/// realizations of `prs`, both counted on the same draws with the tests
/// above; boundary contact therefore counts against belief. Draws are split
/// into fixed blocks, block b using rng.substream(b), so the result is
/// independent of the worker count.
BeliefEstimate belief_mc(const Association& assoc, const PredictiveRandomSet& prs, double x,
                         const Assertion& assertion, std::uint64_t draws, const StreamRng& rng);

inline constexpr std::uint64_t kBeliefBlockDraws = 2048;

/// Exact belief/plausibility under the default random set:
/// b(A) = 1 - sup{pl(theta) : theta in closure(A^c)} and
/// p(A) = sup{pl(theta) : theta in closure(A)}, with pl the singleton
/// plausibility. Uses only the monotonicity of the auxiliary map.
BeliefPair belief_default_closed(const Association& assoc, double x, const Assertion& assertion);

/// p_x({theta}) = f_S(u_theta).
double singleton_plausibility(const Association& assoc, const PredictiveRandomSet& prs, double x,
                              double theta);

/// Evaluation grid over the model's scan coordinate.
struct ScanGrid {
  double lo;
  double hi;
  std::size_t points;
};

inline constexpr double kRegionTolerance = 1e-9;

/// {theta : p_x({theta}) > alpha} by sign-change scan of pl - alpha over
/// the grid and bisection of each crossing to kRegionTolerance in the scan
/// coordinate. Crossings are excluded; pieces still above alpha at a grid
/// edge are clipped there. Throws DegenerateGrid for fewer than 2 points.
ParamSet plausibility_region(const Association& assoc, const PredictiveRandomSet& prs, double x,
                             double alpha, const ScanGrid& grid);

/// Closed-form region for the default random set: the open set of theta
/// whose auxiliary value lies in (alpha/2, 1 - alpha/2).
ParamSet plausibility_interval_default(const Association& assoc, double x, double alpha);

/// The same region in scan coordinates, as an open interval.
ParamSet plausibility_interval_default_scan(const Association& assoc, double x, double alpha);

}  // namespace iminfer
