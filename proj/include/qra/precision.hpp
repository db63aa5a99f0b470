#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qra {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
};

/// Precision of a set of measured quantity values, all statistics computed on
/// shifted values. cv and cv_star are percentages.
struct PrecisionResult {
  std::size_t n = 0;
  double mean = 0.0;
  double s = 0.0;        // n-1 sample standard deviation
  double s_star = 0.0;   // s / c4(n)
  double se_s_star = 0.0;
  Interval ci95;
  // t(0.975, n-1) * se_s_star; ci95 is exactly s_star -/+ this value.
  double ci_half_width = 0.0;
  double cv = 0.0;
  double cv_star = 0.0;
  // s_star == 0: the standard error and the interval collapse to a point.
  bool degenerate_spread = false;

  bool operator==(const PrecisionResult&) const = default;
};

struct SampleStats {
  double mean = 0.0;
  double s = 0.0;
};

/// values - scale_min, order preserved. Throws ValueBelowScale.
std::vector<double> shift_values(std::span<const double> values, double scale_min);

/// Bias-correction constant with E[s] = c4(n) * sigma for normal samples:
/// sqrt(2/(n-1)) * Gamma(n/2) / Gamma((n-1)/2). Throws InvalidSampleSize for n < 2.
double c4(std::size_t n);

/// Arithmetic mean and n-1 standard deviation. Accumulation runs over a sorted
/// copy, so the result does not depend on input order.
SampleStats sample_stats(std::span<const double> shifted);

double unbiased_stdev(double s, std::size_t n);

/// Standard error of s*, approximated from the standard error of the sample
/// variance sqrt(2 sigma^4 / (n-1)) scaled by 1 / (2 sigma). sigma is replaced
/// by s inside the variance term and by s* in the scaling factor. Returns 0
/// when s_star is 0.
double stdev_stderr(double s, double s_star, std::size_t n);

/// Two-sided 95% interval s_star -/+ t(0.975, n-1) * se.
Interval stdev_ci95(double s_star, double se, std::size_t n);

/// shift -> sample_stats -> unbiased_stdev -> stdev_stderr -> stdev_ci95, then
/// CV = 100 s*/mean and CV* = (1 + 1/(4n)) CV.
/// Throws DegenerateMean when the shifted mean is 0.
PrecisionResult cv_star_pipeline(std::span<const double> values, double scale_min);

/// Small-sample correction factor applied to CV.
inline double cv_correction(std::size_t n) { return 1.0 + 1.0 / (4.0 * static_cast<double>(n)); }

// Student's t distribution.

double t_cdf(double x, double df);
/// Inverse CDF of Student's t with df degrees of freedom.
/// Throws InvalidProbability unless 0 < p < 1 and InvalidDf unless df >= 1.
double t_quantile(double p, int df);

/// Inverse CDF of the standard normal distribution.
double normal_quantile(double p);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace qra
