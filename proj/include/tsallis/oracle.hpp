#pragma once

#include <span>
#include <vector>

#include "tsallis/types.hpp"

namespace tsallis {

/// Unconstrained gradient of F at a strictly interior p:
///   dF/dp_i = -q p_i^(q-1) [beta (E_i - U_q)/z_q + 1/(q-1)].
/// Inside the q -> 1 band this is the Shannon form -beta E_i - ln p_i - 1.
std::vector<double> free_energy_gradient(std::span<const double> p,
                                         std::span<const double> energies,
                                         const Parameters& params);
std::vector<double> free_energy_gradient(const Distribution& p, const Spectrum& s,
                                         const Parameters& params);

/// Sup-norm of the gradient with its mean removed, i.e. its projection onto
/// the tangent space of sum(p) = 1.
double stationarity_residual(const Distribution& p, const Spectrum& s, const Parameters& params);

inline constexpr std::size_t kGridSearchMaxDimension = 4;

/// Brute-force maximizer of F over the lattice with spacing 1/round(1/resolution).
/// Ties go to the lexicographically smallest probability vector.
Distribution grid_search(const Spectrum& s, const Parameters& params, double resolution);

struct AscentResult {
  Distribution point;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> f_trace;  // F at every accepted iterate, starting point first
};

inline constexpr double kAscentTolerance = 1e-10;

/// Rounding allowance when comparing F values during ascent. The entropy term
/// divides by q - 1, which amplifies summation error by 1/|q - 1|.
double ascent_rounding_slack(double f, double q);

/// Gradient ascent on the simplex with step halving. The step direction is the
/// gradient projected in the diagonal metric of the simplex,
/// d_i = p_i (g_i - sum_j p_j g_j), which keeps levels with tiny p_i from
/// dominating the conditioning. Stops when the stationarity residual falls
/// below kAscentTolerance or after max_iter accepted steps.
AscentResult projected_gradient_ascent(const Spectrum& s, const Parameters& params,
                                       const Distribution& start, double step, int max_iter);

/// Grid search followed by ascent refinement. The grid point is pulled
/// slightly toward uniform if it lies on the simplex boundary.
AscentResult oracle_maximize(const Spectrum& s, const Parameters& params, double resolution,
                             double step = 0.1, int max_iter = 200000);

}  // namespace tsallis
