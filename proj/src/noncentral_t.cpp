#include "iminfer/noncentral_t.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "iminfer/error.hpp"
#include "iminfer/normal.hpp"
#include "iminfer/quadrature.hpp"

namespace iminfer {

namespace {

constexpr double kTailMass = 1e-14;
constexpr int kPanelsPerPiece = 1;
constexpr double kSolveTolerance = 1e-10;
constexpr double kMaxAbsT = 1e8;

const GaussLegendreRule& rule() {
  static const GaussLegendreRule r = gauss_legendre(kNoncentralTNodes);
  return r;
}

// Support and normalizing constant of S = sqrt(V / k), V ~ ChiSq(k):
// log f(s) = log_norm + (k - 1) log s - k s^2 / 2.
struct ScaleLaw {
  double s_lo;
  double s_hi;
  double log_norm;
};

const ScaleLaw& scale_law(int dof) {
  static std::mutex mutex;
  static std::map<int, ScaleLaw> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(dof);
  if (it == cache.end()) {
    const double k = dof;
    const double half = 0.5 * k;
    const double v_lo = 2.0 * boost::math::gamma_p_inv(half, kTailMass);
    const double v_hi = 2.0 * boost::math::gamma_q_inv(half, kTailMass);
    const double log_norm = std::log(2.0) + half * std::log(half) - std::lgamma(half);
    it = cache.emplace(dof, ScaleLaw{std::sqrt(v_lo / k), std::sqrt(v_hi / k), log_norm}).first;
  }
  return it->second;
}

void check(double t, const NoncentralTSpec& spec) {
  if (spec.dof < 1) throw Error(ErrorKind::InvalidArgument, "degrees of freedom must be >= 1");
  if (!std::isfinite(t) || std::isnan(spec.noncentrality)) {
    throw Error(ErrorKind::InvalidArgument, "non-central t arguments must be finite");
  }
  if (std::abs(spec.noncentrality) > kMaxNoncentrality) {
    throw Error(ErrorKind::RangeExceeded,
                "noncentrality " + std::to_string(spec.noncentrality) + " outside [-100, 100]");
  }
}

struct TailIntegral {
  double value;    // lower CDF or upper tail
  double d_delta;  // derivative of the lower CDF in delta
  double d_t;      // derivative of the lower CDF in t
};

TailIntegral integrate(double t, const NoncentralTSpec& spec, bool upper, bool derivatives) {
  const ScaleLaw& law = scale_law(spec.dof);
  const double k = spec.dof;
  const double delta = spec.noncentrality;
  const auto& gl = rule();

  double cuts[3] = {law.s_lo, law.s_hi, law.s_hi};
  int pieces = 1;
  if (t != 0.0) {
    const double kink = delta / t;
    if (kink > law.s_lo && kink < law.s_hi) {
      cuts[1] = kink;
      pieces = 2;
    }
  }

  double value = 0.0, d_delta = 0.0, d_t = 0.0;
  for (int piece = 0; piece < pieces; ++piece) {
    const double width = (cuts[piece + 1] - cuts[piece]) / kPanelsPerPiece;
    for (int panel = 0; panel < kPanelsPerPiece; ++panel) {
      const double a = cuts[piece] + width * panel;
      const double mid = a + 0.5 * width;
      const double half = 0.5 * width;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double s = mid + half * gl.nodes[i];
        const double w = half * gl.weights[i] * std::exp(law.log_norm + (k - 1.0) * std::log(s) - 0.5 * k * s * s);
        const double z = t * s - delta;
        value += w * norm_cdf(upper ? -z : z);
        if (derivatives) {
          const double density = norm_pdf(z);
          d_delta -= w * density;
          d_t += w * s * density;
        }
      }
    }
  }
  return {value, d_delta, d_t};
}

// Normal score of the lower CDF, evaluated on whichever tail is accurate.
struct Score {
  double z;
  double dz_ddelta;
  double dz_dt;
};

Score score(double t, const NoncentralTSpec& spec, bool upper) {
  const TailIntegral r = integrate(t, spec, upper, true);
  const double z = upper ? -norm_quantile(r.value) : norm_quantile(r.value);
  const double density = norm_pdf(z);
  return {z, r.d_delta / density, r.d_t / density};
}

// Safeguarded Newton on an increasing score function g(x) - target with
// bracket [lo, hi]; `eval` returns {g, g'}.
template <class Eval>
double newton_bisect(Eval eval, double target, double lo, double hi, double x) {
  for (int iter = 0; iter < 400; ++iter) {
    const auto [g, slope] = eval(x);
    if (g == target) return x;
    if (g < target) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - (g - target) / slope;
    const bool usable = std::isfinite(g) && std::isfinite(next) && slope > 0.0;
    if (!usable || next <= lo || next >= hi) {
      if (std::isinf(lo)) {
        next = hi - 2.0 * std::max(1.0, std::abs(hi));
      } else if (std::isinf(hi)) {
        next = lo + 2.0 * std::max(1.0, std::abs(lo));
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    if (std::abs(next - x) <= kSolveTolerance || hi - lo <= kSolveTolerance) return next;
    x = next;
  }
  return x;
}

}  // namespace

double noncentral_t_cdf(double t, const NoncentralTSpec& spec) {
  check(t, spec);
  return integrate(t, spec, false, false).value;
}

double noncentral_t_upper(double t, const NoncentralTSpec& spec) {
  check(t, spec);
  return integrate(t, spec, true, false).value;
}

double noncentral_t_solve_noncentrality(double t, int dof, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidArgument, "probability must be in (0,1)");
  check(t, {dof, 0.0});
  const bool upper = p > 0.5;
  const double target = upper ? -norm_quantile(1.0 - p) : norm_quantile(p);

  // The score decreases in delta; solve for -delta so the search sees an
  // increasing function.
  auto eval = [&](double neg_delta) {
    const Score s = score(t, {dof, -neg_delta}, upper);
    return std::pair{s.z, -s.dz_ddelta};
  };
  const double guess = std::clamp(t - target, -kMaxNoncentrality, kMaxNoncentrality);
  const double root =
      -newton_bisect(eval, target, -kMaxNoncentrality, kMaxNoncentrality, -guess);

  if (std::abs(root) > kMaxNoncentrality - 1e-6) {
    const double edge = std::copysign(kMaxNoncentrality, root);
    const double z = score(t, {dof, edge}, upper).z;
    const bool beyond = edge > 0 ? z > target : z < target;
    if (beyond) {
      throw Error(ErrorKind::RangeExceeded, "noncentrality solving P(T <= " + std::to_string(t) +
                                                ") = " + std::to_string(p) + " lies outside [-100, 100]");
    }
  }
  return root;
}

double noncentral_t_quantile(double p, const NoncentralTSpec& spec) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidArgument, "probability must be in (0,1)");
  check(0.0, spec);
  const bool upper = p > 0.5;
  const double target = upper ? -norm_quantile(1.0 - p) : norm_quantile(p);
  auto eval = [&](double t) {
    if (std::abs(t) > 10.0 * kMaxAbsT) throw Error(ErrorKind::RangeExceeded, "quantile beyond |t| <= 1e8");
    const Score s = score(t, spec, upper);
    return std::pair{s.z, s.dz_dt};
  };
  const double inf = std::numeric_limits<double>::infinity();
  const double t = newton_bisect(eval, target, -inf, inf, spec.noncentrality + target);
  if (std::abs(t) > kMaxAbsT) {
    throw Error(ErrorKind::RangeExceeded, "quantile beyond |t| <= 1e8");
  }
  return t;
}

}  // namespace iminfer
