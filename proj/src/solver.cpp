#include "tsallis/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "tsallis/detail/parallel.hpp"
#include "tsallis/error.hpp"
#include "tsallis/functionals.hpp"

namespace tsallis {

void SolveOptions::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidOptions, "tol must be > 0");
  if (!(relative_tol > 0.0)) throw Error(ErrorCode::InvalidOptions, "relative_tol must be > 0");
  if (!(residual_tol > 0.0)) throw Error(ErrorCode::InvalidOptions, "residual_tol must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) throw Error(ErrorCode::InvalidOptions, "damping must lie in (0, 1]");
  if (max_iter < 1) throw Error(ErrorCode::InvalidOptions, "max_iter must be >= 1");
}

RegimeReport check_regime(const Spectrum& s, const Parameters& params) {
  const double q = params.q;
  const double beta = params.beta;
  if (!std::isfinite(q) || !std::isfinite(beta) || q <= 0.0 || beta < 0.0) {
    return {RegimeBranch::OutOfRegime, std::numeric_limits<double>::quiet_NaN(), false};
  }
  if (near_boltzmann_limit(q)) return {RegimeBranch::QNearOne, 1.0, true};

  const double n = static_cast<double>(s.size());
  if (q > 1.0) {
    const double value = 1.0 - beta * (q - 1.0) * s.width() * std::pow(n, q - 1.0);
    return {RegimeBranch::QAboveOne, value, value > 0.0};
  }
  const double value = 1.0 + beta * (1.0 - q) * (s.e_min() - s.e_max());
  return {RegimeBranch::QBelowOne, value, value > 0.0};
}

MapStep gibbs_map_step(std::span<const double> p, const Spectrum& s, const Parameters& params,
                       bool cutoff_mode) {
  if (p.size() != s.size()) {
    throw Error(ErrorCode::LengthMismatch, "distribution and spectrum differ in length");
  }
  // Inside the q -> 1 band use the exact limit: z = sum p, plain mean energy,
  // exponential weights.
  const bool limit = params.near_one();
  const double q = limit ? 1.0 : params.q;
  const double z = z_q(p, q);
  const double u = internal_energy(p, s.energies(), q);
  const std::size_t n = p.size();

  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = params.beta * (s[i] - u) / z;

  MapStep out;
  out.next.resize(n);
  double shift = 0.0;
  if (limit) shift = *std::min_element(t.begin(), t.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto w = q_weight(t[i] - shift, q, cutoff_mode);
    out.next[i] = w.value;
    out.any_cut = out.any_cut || w.cut;
    total += w.value;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllWeightsZero, "cutoff removed every energy level");
  for (auto& x : out.next) x /= total;
  out.normalizer = limit ? total * std::exp(-shift) : total;
  return out;
}

Distribution gibbs_map(const Distribution& p, const Spectrum& s, const Parameters& params,
                       bool cutoff_mode) {
  return Distribution::from_weights(gibbs_map_step(p.probs(), s, params, cutoff_mode).next);
}

double self_consistency_residual(const Distribution& p, const Spectrum& s,
                                 const Parameters& params, bool cutoff_mode) {
  const auto step = gibbs_map_step(p.probs(), s, params, cutoff_mode);
  return sup_distance(p.probs(), step.next);
}

namespace {

SolveReport finish(Distribution solution, const Spectrum& s, const Parameters& params,
                   const SolveOptions& opts, RegimeReport regime, int iterations,
                   double update_norm, bool step_converged) {
  const auto step = gibbs_map_step(solution.probs(), s, params, opts.cutoff_mode);
  const double residual = sup_distance(solution.probs(), step.next);
  ThermoState thermo = evaluate_thermo(solution, s, params);
  thermo.z_hat = step.normalizer;
  const bool converged = step_converged && update_norm <= opts.tol && residual <= opts.residual_tol;
  return SolveReport{std::move(solution), thermo, iterations, update_norm, residual, regime, converged};
}

}  // namespace

SolveReport solve_from(const Spectrum& s, const Parameters& params, const Distribution& start,
                       const SolveOptions& opts) {
  opts.validate();
  if (start.size() != s.size()) {
    throw Error(ErrorCode::LengthMismatch, "start distribution and spectrum differ in length");
  }
  const RegimeReport regime = check_regime(s, params);
  if (regime.branch == RegimeBranch::OutOfRegime) {
    throw Error(ErrorCode::InvalidParameters, "q must be > 0 and beta >= 0");
  }
  if (opts.enforce_regime && !regime.satisfied) {
    throw Error(ErrorCode::RegimeViolation,
                std::string(to_string(regime.branch)) + " regime condition value " +
                    std::to_string(regime.condition_value) + " is not positive");
  }

  if (regime.branch == RegimeBranch::QNearOne) {
    return finish(boltzmann_distribution(s, params.beta), s, params, opts, regime, 0, 0.0, true);
  }

  const double alpha = opts.damping;
  std::vector<double> p = start.values();
  std::vector<double> next(p.size());
  double update_norm = std::numeric_limits<double>::infinity();
  bool step_converged = false;
  int it = 0;
  while (it < opts.max_iter) {
    ++it;
    const auto mapped = gibbs_map_step(p, s, params, opts.cutoff_mode);
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] = (1.0 - alpha) * p[i] + alpha * mapped.next[i];
      total += next[i];
    }
    double abs_step = 0.0;
    double rel_step = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] /= total;
      const double d = std::abs(next[i] - p[i]);
      abs_step = std::max(abs_step, d);
      // Levels zeroed by the cutoff decay geometrically and never settle in
      // relative terms; only the absolute rule applies to them.
      if (mapped.next[i] > 0.0) rel_step = std::max(rel_step, d / next[i]);
    }
    p.swap(next);
    update_norm = abs_step;
    if (abs_step <= opts.tol && rel_step <= opts.relative_tol) {
      step_converged = true;
      break;
    }
  }
  return finish(Distribution::from_weights(std::move(p)), s, params, opts, regime, it, update_norm,
                step_converged);
}

SolveReport solve(const Spectrum& s, const Parameters& params, const SolveOptions& opts) {
  return solve_from(s, params, Distribution::uniform(s.size()), opts);
}

Distribution small_beta_approx(const Spectrum& s, const Parameters& params) {
  const double n = static_cast<double>(s.size());
  const double q = params.near_one() ? 1.0 : params.q;
  const double mean = s.mean();
  const double coeff = params.beta * std::pow(n, q - 2.0);
  std::vector<double> p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    p[i] = 1.0 / n - coeff * (s[i] - mean);
    if (!(p[i] > 0.0)) {
      throw Error(ErrorCode::NegativeComponent,
                  "beta too large for the linearization: component " + std::to_string(i + 1) +
                      " is " + std::to_string(p[i]));
    }
  }
  return Distribution::from_weights(std::move(p));
}

ProbeReport uniqueness_probe(const Spectrum& s, const Parameters& params, const SolveOptions& opts,
                             int n_starts, std::uint64_t seed) {
  opts.validate();
  if (n_starts < 0) throw Error(ErrorCode::InvalidOptions, "n_starts must be >= 0");
  const RegimeReport regime = check_regime(s, params);
  if (opts.enforce_regime && !regime.satisfied) {
    throw Error(ErrorCode::RegimeViolation,
                "regime condition value " + std::to_string(regime.condition_value) + " is not positive");
  }

  ProbeReport report;
  report.starts.reserve(static_cast<std::size_t>(n_starts) + 1);
  report.starts.push_back(ProbeStart{Distribution::uniform(s.size()), std::nullopt, false, {}});
  std::mt19937_64 rng(seed);
  for (int k = 0; k < n_starts; ++k) {
    report.starts.push_back(ProbeStart{random_simplex_point(s.size(), rng), std::nullopt, false, {}});
  }

  const std::size_t count = report.starts.size();
  detail::parallel_for(count, [&](std::size_t i) {
    auto& entry = report.starts[i];
    try {
      auto r = solve_from(s, params, entry.start, opts);
      entry.converged = r.converged;
      entry.terminal = std::move(r.solution);
    } catch (const Error& e) {
      entry.error = std::string(to_string(e.code())) + ": " + e.what();
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    const auto& a = report.starts[i];
    if (!a.converged) {
      ++report.failed;
      continue;
    }
    for (std::size_t j = i + 1; j < count; ++j) {
      const auto& b = report.starts[j];
      if (b.converged) {
        report.max_distance = std::max(report.max_distance, sup_distance(a.terminal->probs(), b.terminal->probs()));
      }
    }
  }
  return report;
}

}  // namespace tsallis
