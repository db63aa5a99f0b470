#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace qra {

struct SimConfig {
  std::size_t n = 5;
  double sigma = 1.0;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  // Population mean; defaults to 10 * sigma so shifted means stay well away from 0.
  std::optional<double> mu;
};

struct SimResult {
  std::size_t n = 0;
  double sigma = 0.0;
  double mu = 0.0;
  std::size_t trials = 0;
  double mean_s_star = 0.0;
  double mean_s = 0.0;
  // Fraction of trials whose 95% stdev interval contains sigma.
  double ci_coverage = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const SimResult&) const = default;
};

/// Draws `trials` normal samples of size n and runs each through the
/// precision statistics. Randomness comes from std::mt19937_64 seeded with
/// `seed`, mapped to normals with the Box-Muller transform, so results are
/// identical on every platform. Throws InvalidParameters.
SimResult simulate(const SimConfig& config);

}  // namespace qra
