#include "tsallis/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tsallis/error.hpp"

namespace tsallis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::NonFiniteEnergy: return "NonFiniteEnergy";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::NotOnSimplex: return "NotOnSimplex";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::InvalidOptions: return "InvalidOptions";
    case ErrorCode::BracketViolation: return "BracketViolation";
    case ErrorCode::AllWeightsZero: return "AllWeightsZero";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::NegativeComponent: return "NegativeComponent";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(RegimeBranch branch) {
  switch (branch) {
    case RegimeBranch::QAboveOne: return "QAboveOne";
    case RegimeBranch::QBelowOne: return "QBelowOne";
    case RegimeBranch::QNearOne: return "QNearOne";
    case RegimeBranch::OutOfRegime: return "OutOfRegime";
  }
  return "Unknown";
}

Spectrum::Spectrum(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) throw Error(ErrorCode::EmptySpectrum, "spectrum has no energy levels");
  for (std::size_t i = 0; i < energies_.size(); ++i) {
    if (!std::isfinite(energies_[i])) {
      throw Error(ErrorCode::NonFiniteEnergy, "energy level " + std::to_string(i + 1) + " is not finite");
    }
  }
  auto [lo, hi] = std::minmax_element(energies_.begin(), energies_.end());
  e_min_ = *lo;
  e_max_ = *hi;
}

double Spectrum::mean() const noexcept {
  return std::accumulate(energies_.begin(), energies_.end(), 0.0) / static_cast<double>(energies_.size());
}

Spectrum make_spectrum(std::vector<double> energies) { return Spectrum(std::move(energies)); }

Parameters make_parameters(double q, double beta) {
  if (!std::isfinite(q) || q <= 0.0) {
    throw Error(ErrorCode::InvalidParameters, "entropic index q must be finite and > 0");
  }
  if (!std::isfinite(beta) || beta < 0.0) {
    throw Error(ErrorCode::InvalidParameters, "inverse temperature beta must be finite and >= 0");
  }
  return Parameters{q, beta};
}

namespace {

void check_entries(const std::vector<double>& v) {
  if (v.empty()) throw Error(ErrorCode::ZeroTotal, "empty probability vector");
  for (double x : v) {
    if (std::isnan(x) || x < 0.0) throw Error(ErrorCode::NegativeWeight, "weights must be nonnegative");
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteEnergy, "weights must be finite");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroTotal, "weights sum to zero");
  for (auto& x : probs_) x /= total;
  interior_ = std::all_of(probs_.begin(), probs_.end(), [](double x) { return x > 0.0; });
}

Distribution Distribution::from_weights(std::vector<double> weights) {
  check_entries(weights);
  return Distribution(std::move(weights));
}

Distribution Distribution::from_probabilities(std::vector<double> probs) {
  check_entries(probs);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::NotOnSimplex, "probabilities sum to " + std::to_string(total));
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::ZeroTotal, "empty probability vector");
  return Distribution(std::vector<double>(n, 1.0));
}

Distribution make_distribution(std::vector<double> weights) {
  return Distribution::from_weights(std::move(weights));
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace tsallis
