#include "iminfer/param_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "iminfer/error.hpp"

namespace iminfer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval sanitize(Interval in) {
  if (std::isinf(in.lo)) in.lo_closed = false;
  if (std::isinf(in.hi)) in.hi_closed = false;
  return in;
}

// True when b starts before a ends or exactly where it ends with the
// shared point covered by either side.
bool joins(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo > a.hi) return false;
  return a.hi_closed || b.lo_closed;
}

bool lower_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

}  // namespace

bool Interval::empty() const {
  if (std::isnan(lo) || std::isnan(hi)) return true;
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed) || std::isinf(lo);
  return false;
}

bool Interval::contains(double x) const {
  if (empty() || std::isnan(x) || std::isinf(x)) return false;
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

ParamSet ParamSet::real_line() { return interval(-kInf, kInf, false, false); }

ParamSet ParamSet::point(double x) { return interval(x, x, true, true); }

ParamSet ParamSet::closed(double lo, double hi) { return interval(lo, hi, true, true); }

ParamSet ParamSet::open(double lo, double hi) { return interval(lo, hi, false, false); }

ParamSet ParamSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  return from_intervals({Interval{lo, hi, lo_closed, hi_closed}});
}

ParamSet ParamSet::from_intervals(std::vector<Interval> pieces) {
  std::vector<Interval> kept;
  kept.reserve(pieces.size());
  for (const auto& p : pieces) {
    const Interval s = sanitize(p);
    if (!s.empty()) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(), lower_before);

  ParamSet out;
  for (const auto& piece : kept) {
    if (!out.components_.empty() && joins(out.components_.back(), piece)) {
      Interval& last = out.components_.back();
      if (piece.hi > last.hi) {
        last.hi = piece.hi;
        last.hi_closed = piece.hi_closed;
      } else if (piece.hi == last.hi) {
        last.hi_closed = last.hi_closed || piece.hi_closed;
      }
    } else {
      out.components_.push_back(piece);
    }
  }
  return out;
}

bool ParamSet::bounded() const {
  if (components_.empty()) return true;
  return std::isfinite(components_.front().lo) && std::isfinite(components_.back().hi);
}

bool ParamSet::contains(double x) const {
  return std::any_of(components_.begin(), components_.end(),
                     [x](const Interval& c) { return c.contains(x); });
}

ParamSet ParamSet::complement() const {
  std::vector<Interval> gaps;
  double cursor = -kInf;
  bool cursor_closed = false;  // whether the gap's lower end is a member
  for (const auto& c : components_) {
    gaps.push_back({cursor, c.lo, cursor_closed, !c.lo_closed});
    cursor = c.hi;
    cursor_closed = !c.hi_closed;
  }
  gaps.push_back({cursor, kInf, cursor_closed, false});
  return from_intervals(std::move(gaps));
}

ParamSet ParamSet::unite(const ParamSet& other) const {
  std::vector<Interval> all(components_.begin(), components_.end());
  all.insert(all.end(), other.components_.begin(), other.components_.end());
  return from_intervals(std::move(all));
}

ParamSet ParamSet::intersect(const ParamSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : components_) {
    for (const auto& b : other.components_) {
      Interval c;
      if (a.lo > b.lo) {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        c.lo = b.lo;
        c.lo_closed = b.lo_closed;
      } else {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        c.hi = b.hi;
        c.hi_closed = b.hi_closed;
      } else {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed && b.hi_closed;
      }
      out.push_back(c);
    }
  }
  return from_intervals(std::move(out));
}

ParamSet ParamSet::closure() const {
  std::vector<Interval> out(components_.begin(), components_.end());
  for (auto& c : out) {
    c.lo_closed = true;
    c.hi_closed = true;
  }
  return from_intervals(std::move(out));
}

ParamSet ParamSet::interior() const {
  std::vector<Interval> out(components_.begin(), components_.end());
  for (auto& c : out) {
    c.lo_closed = false;
    c.hi_closed = false;
  }
  return from_intervals(std::move(out));
}

bool ParamSet::subset_of(const ParamSet& other) const {
  return intersect(other.complement()).empty();
}

bool ParamSet::intersects(const ParamSet& other) const { return !intersect(other).empty(); }

ParamSet reciprocal_image(const ParamSet& set) {
  const ParamSet negative = set.intersect(ParamSet::open(-kInf, 0.0));
  const ParamSet positive = set.intersect(ParamSet::open(0.0, kInf));
  std::vector<Interval> out;
  auto invert = [](double v) { return v == 0.0 ? std::copysign(kInf, v) : 1.0 / v; };
  for (const auto& c : negative.components()) {
    // hi is <= 0 here; an open end at 0 is -0.0 so it maps to -inf.
    const double hi = c.hi == 0.0 ? -0.0 : c.hi;
    out.push_back({invert(hi), invert(c.lo), c.hi_closed, c.lo_closed});
  }
  for (const auto& c : positive.components()) {
    const double lo = c.lo == 0.0 ? 0.0 : c.lo;
    out.push_back({invert(c.hi), invert(lo), c.hi_closed, c.lo_closed});
  }
  return ParamSet::from_intervals(std::move(out));
}

// ---------------------------------------------------------------------------
// Assertion grammar

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  ParamSet parse() {
    if (text_ == "{}" || text_ == "empty") return ParamSet::empty_set();
    std::vector<Interval> pieces;
    pieces.push_back(piece());
    while (pos_ < text_.size()) {
      if (consume("u") || consume("U") || consume("\xE2\x88\xAA")) {
        pieces.push_back(piece());
      } else {
        fail("expected 'u' between intervals");
      }
    }
    return ParamSet::from_intervals(std::move(pieces));
  }

 private:
  Interval piece() {
    if (consume("{")) {
      const double v = number();
      expect("}");
      if (std::isinf(v)) fail("singleton must be finite");
      return {v, v, true, true};
    }
    bool lo_closed;
    if (consume("[")) {
      lo_closed = true;
    } else if (consume("(")) {
      lo_closed = false;
    } else {
      fail("expected '(' or '['");
    }
    const double lo = number();
    expect(",");
    const double hi = number();
    bool hi_closed;
    if (consume("]")) {
      hi_closed = true;
    } else if (consume(")")) {
      hi_closed = false;
    } else {
      fail("expected ')' or ']'");
    }
    if (lo > hi) fail("interval lower end exceeds upper end");
    if ((std::isinf(lo) && lo_closed) || (std::isinf(hi) && hi_closed)) {
      fail("infinite endpoints must be open");
    }
    return {lo, hi, lo_closed, hi_closed};
  }

  double number() {
    for (std::string_view word : {"-inf", "+inf", "inf"}) {
      if (consume(word)) return word[0] == '-' ? -kInf : kInf;
    }
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || !std::isfinite(value)) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  bool consume(std::string_view token) {
    if (std::string_view(text_).substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse,
                "assertion \"" + text_ + "\" at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamSet parse_param_set(std::string_view text) { return Parser(text).parse(); }

std::string format_number(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_param_set(const ParamSet& set) {
  if (set.empty()) return "{}";
  std::string out;
  for (const auto& c : set.components()) {
    if (!out.empty()) out += " u ";
    out += c.lo_closed ? '[' : '(';
    out += format_number(c.lo);
    out += ',';
    out += format_number(c.hi);
    out += c.hi_closed ? ']' : ')';
  }
  return out;
}

}  // namespace iminfer
