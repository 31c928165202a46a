#include "tsallis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tsallis/error.hpp"
#include "tsallis/functionals.hpp"

namespace tsallis {

std::vector<double> free_energy_gradient(std::span<const double> p,
                                         std::span<const double> energies,
                                         const Parameters& params) {
  if (p.size() != energies.size()) {
    throw Error(ErrorCode::LengthMismatch, "distribution and spectrum differ in length");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) {
      throw Error(ErrorCode::BoundaryPoint, "gradient needs p_" + std::to_string(i + 1) + " > 0");
    }
  }
  const bool limit = params.near_one();
  const double q = limit ? 1.0 : params.q;
  const double z = z_q(p, q);
  const double u = internal_energy(p, energies, q);

  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = params.beta * (energies[i] - u) / z;
    if (limit) {
      g[i] = -t - std::log(p[i]) - 1.0;
    } else {
      g[i] = -q * std::pow(p[i], q - 1.0) * (t + 1.0 / (q - 1.0));
    }
  }
  return g;
}

std::vector<double> free_energy_gradient(const Distribution& p, const Spectrum& s,
                                         const Parameters& params) {
  return free_energy_gradient(p.probs(), s.energies(), params);
}

namespace {

// Sup-norm of g - mean(g); also centers g in place.
double center(std::vector<double>& g) {
  const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
  double r = 0.0;
  for (auto& x : g) {
    x -= mean;
    r = std::max(r, std::abs(x));
  }
  return r;
}

}  // namespace

double stationarity_residual(const Distribution& p, const Spectrum& s, const Parameters& params) {
  auto g = free_energy_gradient(p, s, params);
  return center(g);
}

Distribution grid_search(const Spectrum& s, const Parameters& params, double resolution) {
  const std::size_t n = s.size();
  if (n > kGridSearchMaxDimension) {
    throw Error(ErrorCode::DimensionTooLarge,
                "grid search supports at most " + std::to_string(kGridSearchMaxDimension) +
                    " levels, got " + std::to_string(n));
  }
  if (!(resolution > 0.0 && resolution <= 0.5)) {
    throw Error(ErrorCode::InvalidOptions, "grid resolution must lie in (0, 0.5]");
  }
  const long m = std::lround(1.0 / resolution);
  const double inv_m = 1.0 / static_cast<double>(m);

  std::vector<long> k(n, 0);
  std::vector<double> p(n);
  std::vector<double> best;
  double best_f = -std::numeric_limits<double>::infinity();

  // Lexicographic enumeration of compositions of m into n parts; the last
  // part is whatever remains. Strict improvement keeps the first maximizer.
  auto visit = [&](auto&& self, std::size_t depth, long remaining) -> void {
    if (depth + 1 == n) {
      k[depth] = remaining;
      for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<double>(k[i]) * inv_m;
      const double f = compromise_function(p, s.energies(), params);
      if (f > best_f) {
        best_f = f;
        best = p;
      }
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      k[depth] = v;
      self(self, depth + 1, remaining - v);
    }
  };
  visit(visit, 0, m);
  return Distribution::from_weights(std::move(best));
}

double ascent_rounding_slack(double f, double q) {
  const double amplification = near_boltzmann_limit(q) ? 1.0 : std::max(1.0, 1.0 / std::abs(q - 1.0));
  return 32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f)) * amplification;
}

namespace {

struct AscentDirection {
  std::vector<double> d;  // p_i (g_i - sum_j p_j g_j), sums to zero
  double residual;        // sup |g - mean g|
  double energy;          // sum_i p_i (g_i - sum_j p_j g_j)^2
};

AscentDirection ascent_direction(std::span<const double> p, std::span<const double> energies,
                                 const Parameters& params) {
  auto g = free_energy_gradient(p, energies, params);
  double weighted = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) weighted += p[i] * g[i];
  AscentDirection out{std::vector<double>(p.size()), 0.0, 0.0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double dev = g[i] - weighted;
    out.d[i] = p[i] * dev;
    out.energy += p[i] * dev * dev;
  }
  out.residual = center(g);
  return out;
}

}  // namespace

AscentResult projected_gradient_ascent(const Spectrum& s, const Parameters& params,
                                       const Distribution& start, double step, int max_iter) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidOptions, "ascent step must be > 0");
  if (max_iter < 1) throw Error(ErrorCode::InvalidOptions, "max_iter must be >= 1");
  if (!start.strictly_interior()) throw Error(ErrorCode::BoundaryPoint, "ascent start must be interior");

  constexpr double kMinStep = 1e-15;
  constexpr double kInteriorFloor = 1e-12;
  const auto energies = s.energies();
  const std::size_t n = start.size();

  std::vector<double> p = start.values();
  double f = compromise_function(p, energies, params);
  AscentDirection dir = ascent_direction(p, energies, params);

  AscentResult out{start, false, 0, dir.residual, {f}};
  std::vector<double> trial(n);
  double current = step;
  while (dir.residual >= kAscentTolerance && out.iterations < max_iter) {
    bool accepted = false;
    for (double h = current; h >= kMinStep; h *= 0.5) {
      bool inside = true;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = p[i] + h * dir.d[i];
        inside = inside && trial[i] >= kInteriorFloor;
        total += trial[i];
      }
      if (!inside) continue;
      for (auto& x : trial) x /= total;
      const double f_trial = compromise_function(trial, energies, params);
      auto dir_trial = ascent_direction(trial, energies, params);
      // Close to the optimum the true gain in F drops below double resolution;
      // a rounding-level change is accepted if the direction norm shrinks.
      const double slack = ascent_rounding_slack(f, params.q);
      if (f_trial > f || (f_trial >= f - slack && dir_trial.energy < dir.energy)) {
        p.swap(trial);
        f = f_trial;
        dir = std::move(dir_trial);
        current = std::min(2.0 * h, step);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++out.iterations;
    out.f_trace.push_back(f);
  }
  out.point = Distribution::from_probabilities(std::move(p));
  out.residual = dir.residual;
  out.converged = dir.residual < kAscentTolerance;
  return out;
}

AscentResult oracle_maximize(const Spectrum& s, const Parameters& params, double resolution,
                             double step, int max_iter) {
  Distribution grid = grid_search(s, params, resolution);
  if (!grid.strictly_interior()) {
    const double n = static_cast<double>(grid.size());
    std::vector<double> w = grid.values();
    for (auto& x : w) x = (1.0 - 1e-3) * x + 1e-3 / n;
    grid = Distribution::from_weights(std::move(w));
  }
  return projected_gradient_ascent(s, params, grid, step, max_iter);
}

}  // namespace tsallis
