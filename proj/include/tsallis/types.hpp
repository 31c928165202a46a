#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tsallis {

/// Half-width of the band around q = 1 where the Boltzmann limit replaces the
/// q-deformed formulas.
inline constexpr double kQLimitEpsilon = 1e-8;

/// Maximum tolerated |sum(p) - 1| before a probability vector is rejected.
inline constexpr double kSimplexTolerance = 1e-12;

inline bool near_boltzmann_limit(double q) noexcept {
  return q - 1.0 < kQLimitEpsilon && 1.0 - q < kQLimitEpsilon;
}

/// Energy eigenvalues of the system with cached extremes.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> energies);

  std::span<const double> energies() const noexcept { return energies_; }
  std::size_t size() const noexcept { return energies_.size(); }
  double operator[](std::size_t i) const noexcept { return energies_[i]; }

  double e_min() const noexcept { return e_min_; }
  double e_max() const noexcept { return e_max_; }
  double width() const noexcept { return e_max_ - e_min_; }
  double mean() const noexcept;

 private:
  std::vector<double> energies_;
  double e_min_;
  double e_max_;
};

Spectrum make_spectrum(std::vector<double> energies);

/// Entropic index q and inverse temperature beta = 1/kT.
struct Parameters {
  double q = 2.0;
  double beta = 0.0;

  bool near_one() const noexcept { return near_boltzmann_limit(q); }
};

/// Validates q > 0 and beta >= 0, both finite.
Parameters make_parameters(double q, double beta);

/// A point of the probability simplex.
class Distribution {
 public:
  /// Accepts a probability vector whose sum is within kSimplexTolerance of 1
  /// and renormalizes it; anything further off the simplex is an error.
  static Distribution from_probabilities(std::vector<double> probs);

  /// Normalizes arbitrary nonnegative weights with a positive sum.
  static Distribution from_weights(std::vector<double> weights);

  static Distribution uniform(std::size_t n);

  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& values() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

  bool strictly_interior() const noexcept { return interior_; }

 private:
  explicit Distribution(std::vector<double> probs);

  std::vector<double> probs_;
  bool interior_;
};

Distribution make_distribution(std::vector<double> weights);

/// Flat Dirichlet draw on the (n-1)-simplex.
template <class Rng>
Distribution random_simplex_point(std::size_t n, Rng& rng);

/// Sup-norm distance between two equally sized vectors.
double sup_distance(std::span<const double> a, std::span<const double> b);

struct ThermoState {
  double s_q = 0.0;
  double u_q = 0.0;
  double z_q = 0.0;
  std::optional<double> z_hat;
  double f = 0.0;
};

enum class RegimeBranch { QAboveOne, QBelowOne, QNearOne, OutOfRegime };

std::string_view to_string(RegimeBranch branch);

struct RegimeReport {
  RegimeBranch branch = RegimeBranch::QNearOne;
  double condition_value = 1.0;
  bool satisfied = true;
};

struct SolveReport {
  Distribution solution;
  ThermoState thermo;
  int iterations = 0;
  double update_norm = 0.0;
  double residual = 0.0;
  RegimeReport regime;
  bool converged = false;
};

}  // namespace tsallis

#include "tsallis/detail/random_simplex.hpp"
