#include "qra/estimator_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qra/error.hpp"
#include "qra/precision.hpp"

namespace qra {

namespace {

// std::normal_distribution is implementation-defined; this is not.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

SimResult simulate(const SimConfig& config) {
  if (config.n < 2) {
    throw Error(ErrorKind::InvalidParameters, "n must be at least 2 (got " + std::to_string(config.n) + ")");
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    throw Error(ErrorKind::InvalidParameters, "sigma must be a positive finite number");
  }
  if (config.trials < 1) throw Error(ErrorKind::InvalidParameters, "trials must be at least 1");
  const double mu = config.mu.value_or(10.0 * config.sigma);
  if (!std::isfinite(mu)) throw Error(ErrorKind::InvalidParameters, "mu must be finite");

  // Same quantile for every trial; stdev_ci95 would recompute it each time.
  const double t = t_quantile(0.975, static_cast<int>(config.n - 1));

  NormalSource normal(config.seed);
  std::vector<double> sample(config.n);
  double sum_s = 0.0;
  double sum_s_star = 0.0;
  std::size_t covered = 0;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    for (auto& v : sample) v = mu + config.sigma * normal.next();
    const auto stats = sample_stats(sample);
    const double s_star = unbiased_stdev(stats.s, config.n);
    const double half = t * stdev_stderr(stats.s, s_star, config.n);
    sum_s += stats.s;
    sum_s_star += s_star;
    if (s_star - half <= config.sigma && config.sigma <= s_star + half) ++covered;
  }

  const double trials = static_cast<double>(config.trials);
  return SimResult{config.n,          config.sigma,           mu,
                   config.trials,     sum_s_star / trials,    sum_s / trials,
                   static_cast<double>(covered) / trials, config.seed};
}

}  // namespace qra
