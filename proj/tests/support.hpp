#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "tsallis/functionals.hpp"
#include "tsallis/types.hpp"

namespace tsallis::testing {

inline Spectrum random_spectrum(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> e(n);
  for (auto& x : e) x = u(rng);
  return make_spectrum(std::move(e));
}

/// beta at `fraction` of the way to the regime boundary for this spectrum.
inline double regime_beta(const Spectrum& s, double q, double fraction) {
  const double width = s.width();
  if (width == 0.0) return fraction;
  const double n = static_cast<double>(s.size());
  if (q > 1.0) return fraction / ((q - 1.0) * width * std::pow(n, q - 1.0));
  return fraction / ((1.0 - q) * width);
}

/// Interior point bounded away from the boundary: half uniform, half Dirichlet.
template <class Rng>
Distribution random_interior_point(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x = 0.5 * x / total + 0.5 / static_cast<double>(n);
  return Distribution::from_weights(std::move(w));
}

/// Central finite differences of F on the raw coordinates p_i.
inline std::vector<double> finite_difference_gradient(std::span<const double> p, std::span<const double> e,
                                                      const Parameters& params, double h = 1e-6) {
  std::vector<double> x(p.begin(), p.end());
  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = compromise_function(x, e, params);
    x[i] = xi - h;
    const double fm = compromise_function(x, e, params);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline const std::vector<double> kQGrid{0.5, 0.9, 1.5, 2.0};

}  // namespace tsallis::testing
