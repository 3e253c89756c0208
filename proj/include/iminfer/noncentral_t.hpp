#pragma once

namespace iminfer {

/// Non-central Student-t law of (Z + noncentrality) / sqrt(V / dof),
/// Z ~ N(0,1) independent of V ~ ChiSq(dof).
struct NoncentralTSpec {
  int dof;
  double noncentrality;
};

/// Documented numeric range for |noncentrality|.
inline constexpr double kMaxNoncentrality = 100.0;

/// Gauss-Legendre order used on every quadrature panel.
inline constexpr int kNoncentralTNodes = 129;

/// P(T <= t). Integrates Phi(t s - delta) against the law of
/// S = sqrt(V / dof), truncated at the ChiSq(dof) quantiles 1e-14 and
/// 1 - 1e-14, with panels split at the kink s = delta / t.
/// Throws RangeExceeded for |delta| > kMaxNoncentrality and
/// InvalidArgument for dof < 1 or non-finite t.
double noncentral_t_cdf(double t, const NoncentralTSpec& spec);

/// P(T > t), computed directly so upper tails keep relative accuracy.
double noncentral_t_upper(double t, const NoncentralTSpec& spec);

/// The unique delta with noncentral_t_cdf(t; dof, delta) = p. The CDF is
/// strictly decreasing in delta; the root is bracketed in
/// [-kMaxNoncentrality, kMaxNoncentrality] and refined by Newton steps on
/// the normal-score scale, falling back to bisection whenever a step would
/// leave the bracket, until the step or the bracket is below 1e-10.
double noncentral_t_solve_noncentrality(double t, int dof, double p);

/// Inverse of noncentral_t_cdf in t.
double noncentral_t_quantile(double p, const NoncentralTSpec& spec);

}  // namespace iminfer
