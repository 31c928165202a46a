#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsallis/types.hpp"

namespace tsallis {

struct SolveOptions {
  double tol = 1e-13;           // sup-norm step
  double relative_tol = 1e-11;  // max_i |step_i| / p_i
  double residual_tol = 1e-10;
  int max_iter = 10000;
  double damping = 0.5;
  bool cutoff_mode = false;
  bool enforce_regime = true;

  void validate() const;
};

/// Existence/positivity conditions for the q > 1 and 0 < q < 1 branches.
RegimeReport check_regime(const Spectrum& s, const Parameters& params);

struct MapStep {
  std::vector<double> next;
  double normalizer = 0.0;
  bool any_cut = false;
};

/// One application of the Gibbs-type map, exposing the normalizer.
MapStep gibbs_map_step(std::span<const double> p, const Spectrum& s, const Parameters& params,
                       bool cutoff_mode = false);

Distribution gibbs_map(const Distribution& p, const Spectrum& s, const Parameters& params,
                       bool cutoff_mode = false);

/// Sup-norm of p - gibbs_map(p).
double self_consistency_residual(const Distribution& p, const Spectrum& s,
                                 const Parameters& params, bool cutoff_mode = false);

/// Damped fixed-point iteration from the uniform distribution.
///
/// Throws RegimeViolation when `opts.enforce_regime` is set and the regime
/// condition fails, and BracketViolation if an iterate leaves the map's
/// domain. Running out of iterations is not an error: the report comes back
/// with `converged == false`.
SolveReport solve(const Spectrum& s, const Parameters& params, const SolveOptions& opts = {});

/// Same iteration from an arbitrary start. Inside the q -> 1 band the start is
/// ignored and the closed-form Boltzmann distribution is returned.
SolveReport solve_from(const Spectrum& s, const Parameters& params, const Distribution& start,
                       const SolveOptions& opts = {});

/// First-order expansion of the solution about the uniform point:
/// p_i = 1/n - beta (E_i - mean E) n^(q-2).
Distribution small_beta_approx(const Spectrum& s, const Parameters& params);

struct ProbeStart {
  Distribution start;
  std::optional<Distribution> terminal;
  bool converged = false;
  std::string error;
};

struct ProbeReport {
  std::vector<ProbeStart> starts;  // index 0 is the uniform start
  double max_distance = 0.0;       // over converged terminals
  int failed = 0;
};

/// Solves from the uniform start plus `n_starts` flat-Dirichlet random starts
/// and measures how far apart the converged terminal points are.
ProbeReport uniqueness_probe(const Spectrum& s, const Parameters& params, const SolveOptions& opts,
                             int n_starts, std::uint64_t seed);

}  // namespace tsallis
