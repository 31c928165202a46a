#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tsallis/error.hpp"
#include "tsallis/types.hpp"

using namespace tsallis;

namespace {

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tsallis::Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("make_spectrum caches extremes") {
  auto a = make_spectrum({0, 1});
  CHECK(a.size() == 2);
  CHECK(a.e_min() == 0.0);
  CHECK(a.e_max() == 1.0);

  auto b = make_spectrum({5});
  CHECK(b.size() == 1);
  CHECK(b.e_min() == 5.0);
  CHECK(b.e_max() == 5.0);
  CHECK(b.width() == 0.0);

  auto c = make_spectrum({3, -1, 2});
  CHECK(c.e_min() == -1.0);
  CHECK(c.e_max() == 3.0);
  CHECK(c.mean() == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("make_spectrum rejects empty and non-finite input") {
  CHECK(error_code_of([] { make_spectrum({}); }) == ErrorCode::EmptySpectrum);
  CHECK(error_code_of([] { make_spectrum({0.0, std::nan("")}); }) == ErrorCode::NonFiniteEnergy);
  CHECK(error_code_of([] { make_spectrum({std::numeric_limits<double>::infinity()}); }) ==
        ErrorCode::NonFiniteEnergy);
}

TEST_CASE("make_distribution normalizes weights") {
  auto u = make_distribution({1, 1, 1, 1});
  for (double p : u.probs()) CHECK(p == 0.25);
  CHECK(u.strictly_interior());

  auto b = make_distribution({2, 0});
  CHECK(b[0] == 1.0);
  CHECK(b[1] == 0.0);
  CHECK_FALSE(b.strictly_interior());

  auto c = make_distribution({1, 3});
  CHECK(c[0] == 0.25);
  CHECK(c[1] == 0.75);
}

TEST_CASE("make_distribution errors") {
  CHECK(error_code_of([] { make_distribution({1.0, -0.1}); }) == ErrorCode::NegativeWeight);
  CHECK(error_code_of([] { make_distribution({0.0, 0.0}); }) == ErrorCode::ZeroTotal);
  CHECK(error_code_of([] { make_distribution({}); }) == ErrorCode::ZeroTotal);
}

TEST_CASE("from_probabilities accepts only near-simplex input") {
  auto p = Distribution::from_probabilities({0.5, 0.5 + 5e-13});
  CHECK(std::abs(p[0] + p[1] - 1.0) < 1e-15);
  CHECK(error_code_of([] { Distribution::from_probabilities({0.5, 0.6}); }) == ErrorCode::NotOnSimplex);
}

TEST_CASE("make_distribution sums to one and is scale invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  std::uniform_int_distribution<int> len(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = u(rng);
    w[0] += 1e-3;
    const double c = scale(rng);
    std::vector<double> cw = w;
    for (auto& x : cw) x *= c;

    auto a = make_distribution(w);
    auto b = make_distribution(cw);
    const auto probs = a.probs();
    CHECK(std::abs(std::accumulate(probs.begin(), probs.end(), 0.0) - 1.0) < 1e-12);
    CHECK(sup_distance(a.probs(), b.probs()) < 1e-15);
  }
}

TEST_CASE("make_parameters validation") {
  CHECK(make_parameters(2.0, 0.0).beta == 0.0);
  CHECK(make_parameters(1.0, 1.0).near_one());
  CHECK_FALSE(make_parameters(1.0 + 2e-8, 1.0).near_one());
  CHECK(error_code_of([] { make_parameters(0.0, 1.0); }) == ErrorCode::InvalidParameters);
  CHECK(error_code_of([] { make_parameters(-1.0, 1.0); }) == ErrorCode::InvalidParameters);
  CHECK(error_code_of([] { make_parameters(2.0, -0.1); }) == ErrorCode::InvalidParameters);
}
