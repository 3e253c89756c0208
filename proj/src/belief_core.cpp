#include "iminfer/belief_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "iminfer/error.hpp"

namespace iminfer {

FiniteFrame::FiniteFrame(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::InvalidArgument, "frame must have at least one atom");
  if (labels_.size() > kMaxFrameAtoms) {
    throw Error(ErrorKind::InvalidArgument,
                "frame has " + std::to_string(labels_.size()) + " atoms; limit is 62");
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw Error(ErrorKind::InvalidArgument, "duplicate atom label");
}

Subset FiniteFrame::subset_of(std::span<const std::string> members) const {
  Subset out = 0;
  for (const auto& m : members) {
    const auto it = std::find(labels_.begin(), labels_.end(), m);
    if (it == labels_.end()) throw Error(ErrorKind::InvalidArgument, "unknown atom '" + m + "'");
    out |= Subset{1} << static_cast<unsigned>(it - labels_.begin());
  }
  return out;
}

MassFunction mass_from_focal_list(FiniteFrame frame,
                                  std::span<const std::pair<Subset, double>> entries) {
  std::map<Subset, double> merged;
  double total = 0.0;
  for (const auto& [set, mass] : entries) {
    if (set == 0) throw Error(ErrorKind::EmptyFocalSet, "focal element is the empty set");
    if (!frame.within(set)) throw Error(ErrorKind::InvalidArgument, "focal element outside the frame");
    if (!(mass > 0.0) || !std::isfinite(mass)) {
      throw Error(ErrorKind::InvalidArgument, "focal masses must be positive and finite");
    }
    merged[set] += mass;
    total += mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::MassNotNormalized, "masses sum to " + std::to_string(total));
  }
  std::vector<FocalElement> focal;
  focal.reserve(merged.size());
  for (const auto& [set, mass] : merged) focal.push_back({set, mass});
  return MassFunction(std::move(frame), std::move(focal));
}

double belief(const FiniteBeliefFunction& f, Subset a) {
  double sum = 0.0;
  for (const auto& e : f.mass().focal()) {
    if ((e.set & ~a) == 0) sum += e.mass;
  }
  return sum;
}

double plausibility(const FiniteBeliefFunction& f, Subset a) {
  return 1.0 - belief(f, f.frame().complement(a));
}

FiniteBeliefFunction vacuous(const FiniteFrame& frame) {
  const std::pair<Subset, double> whole{frame.full(), 1.0};
  return FiniteBeliefFunction(mass_from_focal_list(frame, std::span(&whole, 1)));
}

double belief_via_random_set_oracle(const FiniteFrame& frame,
                                    std::span<const std::pair<Subset, double>> set_distribution,
                                    Subset a) {
  // Same validation contract as the mass constructor.
  (void)mass_from_focal_list(frame, set_distribution);
  if (frame.size() > kMaxOracleAtoms) {
    throw Error(ErrorKind::InvalidArgument, "oracle enumeration limited to 24 atoms");
  }

  // Probability of every realizable subset, then sum P(S = B) over B <= A.
  std::vector<double> law(std::size_t{1} << frame.size(), 0.0);
  for (const auto& [set, p] : set_distribution) law[set] += p;
  double contained = 0.0;
  for (Subset b = 0; b < law.size(); ++b) {
    const bool inside = (b | a) == a;
    if (inside) contained += law[b];
  }
  return contained;
}

}  // namespace iminfer
