#include "qra/precision.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qra/error.hpp"

namespace qra {

namespace {

void require_sample_size(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidSampleSize,
                "sample size must be at least 2 (got " + std::to_string(n) + ")");
  }
}

constexpr double kCiUpperProbability = 0.975;

}  // namespace

std::vector<double> shift_values(std::span<const double> values, double scale_min) {
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= scale_min)) {
      throw Error(ErrorKind::ValueBelowScale, "value " + std::to_string(values[i]) +
                                                  " at position " + std::to_string(i + 1) +
                                                  " is below the scale minimum " +
                                                  std::to_string(scale_min));
    }
    out.push_back(values[i] - scale_min);
  }
  return out;
}

double c4(std::size_t n) {
  require_sample_size(n);
  const double nd = static_cast<double>(n);
  return std::sqrt(2.0 / (nd - 1.0)) * std::exp(std::lgamma(nd / 2.0) - std::lgamma((nd - 1.0) / 2.0));
}

SampleStats sample_stats(std::span<const double> shifted) {
  require_sample_size(shifted.size());
  std::vector<double> sorted(shifted.begin(), shifted.end());
  std::sort(sorted.begin(), sorted.end());

  // Identical values: return the exact mean and a zero spread rather than
  // rounding residue from the division below.
  if (sorted.front() == sorted.back()) return {sorted.front(), 0.0};

  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  const double mean = sum / n;

  double ss = 0.0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

double unbiased_stdev(double s, std::size_t n) {
  if (s < 0.0) throw Error(ErrorKind::InvalidArgument, "standard deviation must be >= 0");
  return s / c4(n);
}

double stdev_stderr(double s, double s_star, std::size_t n) {
  require_sample_size(n);
  if (s < 0.0 || s_star < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "standard deviations must be >= 0");
  }
  if (s_star == 0.0) return 0.0;
  const double se_variance = s * s * std::sqrt(2.0 / (static_cast<double>(n) - 1.0));
  return se_variance / (2.0 * s_star);
}

Interval stdev_ci95(double s_star, double se, std::size_t n) {
  require_sample_size(n);
  const double half = t_quantile(kCiUpperProbability, static_cast<int>(n - 1)) * se;
  return {s_star - half, s_star + half};
}

PrecisionResult cv_star_pipeline(std::span<const double> values, double scale_min) {
  require_sample_size(values.size());
  const auto shifted = shift_values(values, scale_min);
  const auto stats = sample_stats(shifted);
  if (stats.mean == 0.0) {
    throw Error(ErrorKind::DegenerateMean,
                "shifted mean is 0; the coefficient of variation is undefined");
  }

  PrecisionResult r;
  r.n = values.size();
  r.mean = stats.mean;
  r.s = stats.s;
  r.s_star = unbiased_stdev(stats.s, r.n);
  r.se_s_star = stdev_stderr(r.s, r.s_star, r.n);
  r.ci_half_width = t_quantile(kCiUpperProbability, static_cast<int>(r.n - 1)) * r.se_s_star;
  r.ci95 = {r.s_star - r.ci_half_width, r.s_star + r.ci_half_width};
  r.cv = 100.0 * r.s_star / r.mean;
  r.cv_star = cv_correction(r.n) * r.cv;
  r.degenerate_spread = r.s_star == 0.0;
  return r;
}

}  // namespace qra
