#pragma once

#include <span>

#include "tsallis/types.hpp"

// Thermodynamic quantities of a probability vector. The span overloads treat p
// as a point of R^n (sum(p) need not be 1), which is what finite-difference
// gradient checks need. The Distribution overloads assume the simplex and
// validate lengths against the spectrum.

namespace tsallis {

/// Sum of p_i^q with 0^q = 0.
double z_q(std::span<const double> p, double q);
double z_q(const Distribution& p, double q);

/// (1 - z_q)/(q - 1); Shannon entropy inside the q -> 1 band.
double tsallis_entropy(std::span<const double> p, double q);
double tsallis_entropy(const Distribution& p, double q);

/// -sum p_i ln p_i with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> p);
double shannon_entropy(const Distribution& p);

/// Escort-weighted energy sum(p^q E) / sum(p^q).
double internal_energy(std::span<const double> p, std::span<const double> energies, double q);
double internal_energy(const Distribution& p, const Spectrum& s, double q);

/// F = -beta U_q + S_q.
double compromise_function(std::span<const double> p, std::span<const double> energies,
                           const Parameters& params);
double compromise_function(const Distribution& p, const Spectrum& s, const Parameters& params);

struct QWeight {
  double value;
  bool cut;  // bracket was nonpositive and cutoff mode zeroed the weight
};

/// [1 + (q-1) t]^(1/(1-q)), or exp(-t) inside the q -> 1 band. Throws
/// BracketViolation when the bracket is nonpositive.
double q_weight(double t, double q);

/// As above; with `cutoff` set and q > 1 a nonpositive bracket yields a zero
/// weight instead of an error.
QWeight q_weight(double t, double q, bool cutoff);

/// p_i proportional to exp(-beta (E_i - e_min)).
Distribution boltzmann_distribution(const Spectrum& s, double beta);

/// S_q, U_q, z_q and F at p. z_hat is left empty.
ThermoState evaluate_thermo(const Distribution& p, const Spectrum& s, const Parameters& params);

}  // namespace tsallis
