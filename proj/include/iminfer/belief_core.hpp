#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace iminfer {

/// Subset of a finite frame, bit i set when atom i is a member.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxFrameAtoms = 62;
inline constexpr double kMassTolerance = 1e-12;
inline constexpr std::size_t kMaxOracleAtoms = 24;

class FiniteFrame {
 public:
  /// Throws InvalidArgument on an empty frame, duplicate labels, or more
  /// than kMaxFrameAtoms atoms.
  explicit FiniteFrame(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  Subset full() const noexcept { return (Subset{1} << labels_.size()) - 1; }
  Subset complement(Subset a) const noexcept { return full() & ~a; }
  bool within(Subset a) const noexcept { return (a & ~full()) == 0; }

  /// Subset from atom labels; throws InvalidArgument on an unknown label.
  Subset subset_of(std::span<const std::string> members) const;

 private:
  std::vector<std::string> labels_;
};

struct FocalElement {
  Subset set;
  double mass;
};

/// Basic probability assignment on 2^frame. No empty focal element, every
/// stored mass strictly positive, total mass 1 within kMassTolerance.
class MassFunction {
 public:
  const FiniteFrame& frame() const noexcept { return frame_; }
  std::span<const FocalElement> focal() const noexcept { return focal_; }

 private:
  friend MassFunction mass_from_focal_list(FiniteFrame, std::span<const std::pair<Subset, double>>);
  MassFunction(FiniteFrame frame, std::vector<FocalElement> focal)
      : frame_(std::move(frame)), focal_(std::move(focal)) {}

  FiniteFrame frame_;
  std::vector<FocalElement> focal_;
};

/// Validates and merges (subset, mass) pairs. Duplicate subsets are summed.
/// Throws EmptyFocalSet, MassNotNormalized, or InvalidArgument for
/// non-positive masses and subsets outside the frame.
MassFunction mass_from_focal_list(FiniteFrame frame,
                                  std::span<const std::pair<Subset, double>> entries);

class FiniteBeliefFunction {
 public:
  explicit FiniteBeliefFunction(MassFunction mass) : mass_(std::move(mass)) {}

  const MassFunction& mass() const noexcept { return mass_; }
  const FiniteFrame& frame() const noexcept { return mass_.frame(); }

 private:
  MassFunction mass_;
};

/// Total mass of focal elements contained in `a`.
double belief(const FiniteBeliefFunction& f, Subset a);

/// 1 - belief of the complement of `a`.
double plausibility(const FiniteBeliefFunction& f, Subset a);

/// Single focal element equal to the whole frame.
FiniteBeliefFunction vacuous(const FiniteFrame& frame);

/// Probability that a random subset drawn from `set_distribution` lies
/// inside `a`, computed by enumerating every subset of the frame and
/// accumulating the probability of those contained in `a`. Used as an
/// independent check of belief().
double belief_via_random_set_oracle(const FiniteFrame& frame,
                                    std::span<const std::pair<Subset, double>> set_distribution,
                                    Subset a);

}  // namespace iminfer
