#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "tsallis/error.hpp"
#include "tsallis/functionals.hpp"

using namespace tsallis;
using doctest::Approx;

namespace {

// Reference values from 30-digit mpmath evaluations.
constexpr double kShannon37 = 0.610864302054893463;  // -(0.3 ln 0.3 + 0.7 ln 0.7)
constexpr double kExpMinus02 = 0.818730753077981859;

}  // namespace

TEST_CASE("z_q examples") {
  CHECK(z_q(make_distribution({1, 1}), 2.0) == Approx(0.5).epsilon(1e-15));
  for (double q : {0.3, 1.0, 2.5}) CHECK(z_q(make_distribution({1, 0}), q) == 1.0);
  CHECK(z_q(make_distribution({1, 1}), 0.5) == Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("tsallis_entropy examples") {
  CHECK(tsallis_entropy(make_distribution({1, 1}), 2.0) == Approx(0.5).epsilon(1e-15));
  for (double q : {0.5, 0.9, 1.5, 2.0}) CHECK(tsallis_entropy(make_distribution({1, 0, 0}), q) == 0.0);
  const auto p = make_distribution({0.3, 0.7});
  CHECK(std::abs(tsallis_entropy(p, 1.0 + 1e-9) - kShannon37) < 1e-8);
  CHECK(std::abs(tsallis_entropy(p, 1.0 - 1e-9) - kShannon37) < 1e-8);
}

TEST_CASE("shannon_entropy examples") {
  for (std::size_t n : {1u, 2u, 7u}) {
    CHECK(shannon_entropy(Distribution::uniform(n)) == Approx(std::log(static_cast<double>(n))).epsilon(1e-14));
  }
  CHECK(shannon_entropy(make_distribution({1, 0})) == 0.0);
  CHECK(shannon_entropy(make_distribution({0.3, 0.7})) == Approx(kShannon37).epsilon(1e-14));
}

TEST_CASE("internal_energy examples") {
  const auto constant = make_spectrum({2.5, 2.5, 2.5});
  CHECK(internal_energy(Distribution::uniform(3), constant, 1.7) == Approx(2.5));
  CHECK(internal_energy(make_distribution({0.25, 0.75}), make_spectrum({0, 1}), 2.0) ==
        Approx(0.9).epsilon(1e-15));
  const auto p = make_distribution({0.2, 0.3, 0.5});
  CHECK(internal_energy(p, make_spectrum({1, 2, 4}), 1.0) == Approx(0.2 + 0.6 + 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(internal_energy(p, make_spectrum({1, 2}), 2.0), Error);
}

TEST_CASE("compromise_function examples") {
  const auto p = make_distribution({1, 2, 3});
  const auto s = make_spectrum({0, 1, 5});
  CHECK(compromise_function(p, s, {1.5, 0.0}) == Approx(tsallis_entropy(p, 1.5)));
  CHECK(compromise_function(make_distribution({1, 1}), make_spectrum({0, 1}), {2.0, 0.1}) ==
        Approx(0.45).epsilon(1e-15));
  const auto flat = make_spectrum({4, 4, 4});
  CHECK(compromise_function(p, flat, {0.7, 0.3}) == Approx(-0.3 * 4 + tsallis_entropy(p, 0.7)));
}

TEST_CASE("q_weight examples and errors") {
  for (double q : {0.5, 1.0, 2.0}) CHECK(q_weight(0.0, q) == 1.0);
  CHECK(q_weight(0.2, 2.0) == Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(std::abs(q_weight(0.2, 1.0 + 1e-9) - kExpMinus02) < 1e-9);
  CHECK(std::abs(q_weight(0.2, 1.0 - 1e-9) - kExpMinus02) < 1e-9);

  try {
    q_weight(-1.0, 2.0);
    FAIL("expected BracketViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BracketViolation);
  }
  const auto cut = q_weight(-1.5, 2.0, true);
  CHECK(cut.value == 0.0);
  CHECK(cut.cut);
  // Cutoff is a q > 1 convention only.
  CHECK_THROWS_AS(q_weight(3.0, 0.5, true), Error);
}

TEST_CASE("boltzmann_distribution examples") {
  const auto s = make_spectrum({0, 1, 3});
  const auto hot = boltzmann_distribution(s, 0.0);
  for (double p : hot.probs()) CHECK(p == Approx(1.0 / 3.0));
  const auto b = boltzmann_distribution(make_spectrum({0, 1}), std::log(3.0));
  CHECK(b[0] == Approx(0.75).epsilon(1e-15));
  CHECK(b[1] == Approx(0.25).epsilon(1e-15));
  const auto flat = boltzmann_distribution(make_spectrum({2, 2}), 5.0);
  for (double p : flat.probs()) CHECK(p == 0.5);
  // Shifted exponent keeps large beta finite.
  const auto cold = boltzmann_distribution(make_spectrum({1000, 1001}), 800.0);
  CHECK(cold[0] == Approx(1.0));
}

TEST_CASE("z_q bounds on the simplex") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 3u, 10u}) {
    const double nd = static_cast<double>(n);
    for (double q : {0.3, 0.5, 0.9, 1.5, 2.0, 3.0}) {
      const double ext = std::pow(nd, 1.0 - q);
      for (int k = 0; k < 200; ++k) {
        const auto p = random_simplex_point(n, rng);
        const double z = z_q(p, q);
        if (q > 1) {
          CHECK(z >= ext * (1 - 1e-14));
          CHECK(z <= 1.0 + 1e-14);
        } else {
          CHECK(z >= 1.0 - 1e-14);
          CHECK(z <= ext * (1 + 1e-14));
        }
      }
      CHECK(z_q(Distribution::uniform(n), q) == Approx(ext).epsilon(1e-13));
      std::vector<double> corner(n, 0.0);
      corner[0] = 1.0;
      CHECK(z_q(make_distribution(corner), q) == 1.0);
    }
  }
}

TEST_CASE("tsallis_entropy is permutation invariant and locally maximal at uniform") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double q : testing::kQGrid) {
    for (int k = 0; k < 100; ++k) {
      const auto p = random_simplex_point(5, rng);
      auto v = p.values();
      std::shuffle(v.begin(), v.end(), rng);
      CHECK(tsallis_entropy(make_distribution(v), q) == Approx(tsallis_entropy(p, q)).epsilon(1e-13));

      std::vector<double> bumped(5);
      double mean = 0.0;
      for (auto& x : bumped) mean += (x = noise(rng));
      mean /= 5.0;
      for (auto& x : bumped) x = 0.2 + 1e-3 * (x - mean);
      CHECK(tsallis_entropy(Distribution::uniform(5), q) >= tsallis_entropy(make_distribution(bumped), q));
    }
  }
}

TEST_CASE("thermo state invariants") {
  std::mt19937_64 rng(13);
  for (std::size_t n : {2u, 4u, 9u}) {
    const double nd = static_cast<double>(n);
    for (double q : testing::kQGrid) {
      for (int k = 0; k < 100; ++k) {
        const auto s = testing::random_spectrum(n, rng, -2.0, 3.0);
        const auto p = random_simplex_point(n, rng);
        const auto st = evaluate_thermo(p, s, {q, 0.4});
        CHECK(st.u_q >= s.e_min() - 1e-12);
        CHECK(st.u_q <= s.e_max() + 1e-12);
        CHECK(st.s_q >= -1e-14);
        CHECK(st.s_q <= (1.0 - std::pow(nd, 1.0 - q)) / (q - 1.0) + 1e-12);
        CHECK_FALSE(st.z_hat.has_value());
      }
      const auto s = testing::random_spectrum(n, rng);
      CHECK(internal_energy(Distribution::uniform(n), s, q) == Approx(s.mean()).epsilon(1e-14));
    }
  }
}

TEST_CASE("tsallis entropy approaches Shannon as q -> 1") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> w(6);
    auto base = random_simplex_point(6, rng);
    for (std::size_t i = 0; i < 6; ++i) w[i] = base[i] + 2e-3;
    const auto p = make_distribution(w);
    REQUIRE(*std::min_element(p.probs().begin(), p.probs().end()) >= 1e-3);
    const double shannon = shannon_entropy(p);
    for (double dq : {1e-8, -1e-8}) CHECK(std::abs(tsallis_entropy(p, 1.0 + dq) - shannon) <= 1e-6);
    // Further out the gap is first order: S_q = S_1 - (q-1)/2 sum p ln^2 p + O((q-1)^2).
    double second_moment = 0.0;
    for (double x : p.probs()) second_moment += x * std::log(x) * std::log(x);
    for (double dq : {1e-6, -1e-6, 1e-4}) {
      CHECK(std::abs(tsallis_entropy(p, 1.0 + dq) - (shannon - 0.5 * dq * second_moment)) <= 50 * dq * dq);
    }
  }
}

TEST_CASE("q_weight is decreasing in t") {
  for (double q : {0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0}) {
    // Keep 1 + (q-1) t > 0 on the whole grid.
    const double lo = q > 1 ? -0.99 / (q - 1.0) : -5.0;
    const double hi = q < 1 ? 0.99 / (1.0 - q) : 5.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400; ++i) {
      const double t = lo + (hi - lo) * i / 400.0;
      const double w = q_weight(t, q);
      CHECK(w < prev);
      prev = w;
    }
  }
}
