#include "tsallis/functionals.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tsallis/error.hpp"

namespace tsallis {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::LengthMismatch,
                "distribution has " + std::to_string(a) + " entries, spectrum has " + std::to_string(b));
  }
}

}  // namespace

double z_q(std::span<const double> p, double q) {
  double z = 0.0;
  for (double x : p) {
    if (x > 0.0) z += std::pow(x, q);
  }
  return z;
}

double z_q(const Distribution& p, double q) { return z_q(p.probs(), q); }

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

double shannon_entropy(const Distribution& p) { return shannon_entropy(p.probs()); }

namespace {

// 1 - sum p^q = (1 - sum p) - sum p (p^(q-1) - 1); the q -> 1 cancellation
// then happens inside expm1. On the simplex the first term is dropped, since
// for a normalized vector it is rounding noise amplified by 1/(q-1).
double tsallis_entropy_impl(std::span<const double> p, double q, bool normalized) {
  if (near_boltzmann_limit(q)) return shannon_entropy(p);
  const double qm1 = q - 1.0;
  double total = 0.0;
  double acc = 0.0;
  for (double x : p) {
    total += x;
    if (x > 0.0) acc += x * std::expm1(qm1 * std::log(x));
  }
  const double mass_defect = normalized ? 0.0 : 1.0 - total;
  return (mass_defect - acc) / qm1;
}

}  // namespace

double tsallis_entropy(std::span<const double> p, double q) { return tsallis_entropy_impl(p, q, false); }

double tsallis_entropy(const Distribution& p, double q) { return tsallis_entropy_impl(p.probs(), q, true); }

double internal_energy(std::span<const double> p, std::span<const double> energies, double q) {
  require_same_length(p.size(), energies.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double w = std::pow(p[i], q);
    num += w * energies[i];
    den += w;
  }
  return num / den;
}

double internal_energy(const Distribution& p, const Spectrum& s, double q) {
  return internal_energy(p.probs(), s.energies(), q);
}

double compromise_function(std::span<const double> p, std::span<const double> energies,
                           const Parameters& params) {
  const double u = internal_energy(p, energies, params.q);
  return -params.beta * u + tsallis_entropy(p, params.q);
}

double compromise_function(const Distribution& p, const Spectrum& s, const Parameters& params) {
  return -params.beta * internal_energy(p, s, params.q) + tsallis_entropy(p, params.q);
}

QWeight q_weight(double t, double q, bool cutoff) {
  if (near_boltzmann_limit(q)) return {std::exp(-t), false};
  const double shift = (q - 1.0) * t;
  if (!(1.0 + shift > 0.0)) {
    if (cutoff && q > 1.0) return {0.0, true};
    throw Error(ErrorCode::BracketViolation,
                "q-weight bracket 1 + (q-1)t = " + std::to_string(1.0 + shift) + " is not positive");
  }
  return {std::exp(std::log1p(shift) / (1.0 - q)), false};
}

double q_weight(double t, double q) { return q_weight(t, q, false).value; }

Distribution boltzmann_distribution(const Spectrum& s, double beta) {
  std::vector<double> w(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) w[i] = std::exp(-beta * (s[i] - s.e_min()));
  return Distribution::from_weights(std::move(w));
}

ThermoState evaluate_thermo(const Distribution& p, const Spectrum& s, const Parameters& params) {
  ThermoState st;
  st.z_q = z_q(p, params.q);
  st.s_q = tsallis_entropy(p, params.q);
  st.u_q = internal_energy(p, s, params.q);
  st.f = -params.beta * st.u_q + st.s_q;
  return st;
}

}  // namespace tsallis
