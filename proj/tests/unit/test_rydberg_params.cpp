#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "superatom/errors.hpp"
#include "superatom/geometry.hpp"
#include "superatom/rydberg_params.hpp"

using namespace superatom;

TEST_SUITE("rydberg-params") {
  TEST_CASE("unit ratio gives unit radius") {
    const auto r = blockade_radius({3.7, 3.7, 1.0});
    CHECK(r.r_b == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("c6 = 64 hbar omega gives r_b = 2 and v_b = 32 pi / 3") {
    const auto r = blockade_radius({64.0, 1.0, 1.0});
    const auto ref = oracle::blockade_mp(64.0, 1.0, 1.0);
    CHECK(r.r_b == doctest::Approx(ref.r_b).epsilon(1e-15));
    CHECK(r.v_b == doctest::Approx(ref.v_b).epsilon(1e-14));
    CHECK(r.v_b == doctest::Approx(33.510321638).epsilon(1e-10));
  }

  TEST_CASE("sixth-root homogeneity and monotonicity") {
    const double base = blockade_radius({5.0, 2.0, 1.0}).r_b;
    for (double k : {0.5, 2.0, 3.0, 17.0}) {
      const double scaled = blockade_radius({std::pow(k, 6) * 5.0, 2.0, 1.0}).r_b;
      CHECK(scaled == doctest::Approx(k * base).epsilon(1e-13));
    }
    CHECK(blockade_radius({5.0, 3.0, 1.0}).r_b < base);
    CHECK(blockade_radius({6.0, 2.0, 1.0}).r_b > base);
  }

  TEST_CASE("random inputs match the multiprecision closed form") {
    for (double c6 : {1e-3, 0.7, 42.0, 9.9e6})
      for (double w : {1e-2, 1.3, 250.0})
        for (double hbar : {1.0, 0.6582}) {
          const auto r = blockade_radius({c6, w, hbar});
          const auto ref = oracle::blockade_mp(c6, w, hbar);
          CHECK(r.r_b == doctest::Approx(ref.r_b).epsilon(1e-14));
          CHECK(r.v_b == doctest::Approx(4.0 * std::numbers::pi * std::pow(r.r_b, 3) / 3.0).epsilon(1e-14));
        }
  }

  TEST_CASE("non-positive fields are named") {
    const auto field_of = [](BlockadeInput in) {
      try {
        blockade_radius(in);
      } catch (const DomainError& e) {
        return e.field();
      }
      return std::string{};
    };
    CHECK(field_of({0.0, 1.0, 1.0}) == "c6");
    CHECK(field_of({1.0, -2.0, 1.0}) == "omega_exc");
    CHECK(field_of({1.0, 1.0, 0.0}) == "hbar");
  }

  TEST_CASE("full blockade gate") {
    CHECK(is_fully_blockaded({1.0, 1.0, 0.1, 1.0, 0.78}, 17.0));
    CHECK_FALSE(is_fully_blockaded({20.0, 1.0, 0.1, 1.0, 0.78}, 17.0));
    // Absorber geometry from the experiment: sigma_r = 10 um, sigma_z = 6 um, r_B ~ 17 um.
    CHECK(is_fully_blockaded({10.0, 6.0, 0.1, 6.5, 0.78}, 17.0));
    CHECK_FALSE(is_fully_blockaded({10.0, 6.0, 0.1, 6.5, 0.78}, 17.0, 2.0));
  }
}
