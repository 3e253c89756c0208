#pragma once

namespace iminfer {

double norm_pdf(double z);

/// Standard normal distribution function, accurate in both tails.
double norm_cdf(double z);

/// Inverse of norm_cdf (Wichura's AS 241, about 1e-16 relative accuracy).
/// Returns -inf / +inf at p = 0 / 1 and NaN outside [0, 1].
double norm_quantile(double p);

}  // namespace iminfer
