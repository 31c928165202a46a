#pragma once

#include <random>
#include <vector>

namespace tsallis {

template <class Rng>
Distribution random_simplex_point(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (;;) {
    for (auto& x : w) x = expo(rng);
    bool positive = true;
    for (double x : w) positive = positive && x > 0.0;
    if (positive) return Distribution::from_weights(std::move(w));
  }
}

}  // namespace tsallis
