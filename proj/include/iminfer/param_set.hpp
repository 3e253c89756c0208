#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iminfer {

/// One connected piece of a subset of the extended real line. Infinite
/// endpoints are never members, so their closed flags are always false.
struct Interval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool empty() const;
  bool contains(double x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals over the real line with open/closed
/// endpoint semantics. Components are kept sorted, pairwise disjoint and
/// non-empty; touching components whose shared point is covered are merged.
class ParamSet {
 public:
  ParamSet() = default;

  static ParamSet empty_set() { return {}; }
  static ParamSet real_line();
  static ParamSet point(double x);
  static ParamSet closed(double lo, double hi);
  static ParamSet open(double lo, double hi);
  static ParamSet interval(double lo, double hi, bool lo_closed, bool hi_closed);
  static ParamSet from_intervals(std::vector<Interval> pieces);

  std::span<const Interval> components() const { return components_; }
  bool empty() const { return components_.empty(); }
  bool bounded() const;
  bool contains(double x) const;

  ParamSet complement() const;
  ParamSet unite(const ParamSet& other) const;
  ParamSet intersect(const ParamSet& other) const;
  ParamSet closure() const;
  ParamSet interior() const;

  bool subset_of(const ParamSet& other) const;
  bool intersects(const ParamSet& other) const;

  friend bool operator==(const ParamSet&, const ParamSet&) = default;

 private:
  std::vector<Interval> components_;
};

/// Image of a set under x -> 1/x. Zero has no image and ±infinity are not
/// members, so a set reaching out to ±infinity maps to one touching 0 (open).
ParamSet reciprocal_image(const ParamSet& set);

/// Parses the assertion grammar, e.g. "(-inf,9]", "(a,b] u [c,inf)", "{}"
/// for the empty set, "{v}" for a singleton. Throws Error(Parse).
ParamSet parse_param_set(std::string_view text);

/// Inverse of parse_param_set; numbers use the shortest round-trip form.
std::string format_param_set(const ParamSet& set);

std::string format_number(double x);

struct Assertion {
  ParamSet region;
  std::string label;
};

}  // namespace iminfer
