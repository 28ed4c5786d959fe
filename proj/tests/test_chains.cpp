#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cradle/chains.hpp"
#include "cradle/errors.hpp"
#include "cradle/spectral.hpp"

using namespace cradle;

TEST_SUITE("chains") {
  TEST_CASE("uniform chain layout") {
    const auto c = uniform_chain(3, 1.0);
    CHECK(c.tau().size() == 2);
    CHECK(c.tau()[0] == 1.0);
    CHECK(c.tau()[1] == 1.0);
    CHECK(c.eps().size() == 3);
    for (double e : c.eps()) CHECK(e == 0.0);

    const auto single = uniform_chain(1, 1.0);
    CHECK(single.sites() == 1);
    CHECK(single.tau().empty());
    CHECK(single.eps()[0] == 0.0);

    CHECK_THROWS_AS(uniform_chain(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_chain(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_chain(3, -1.0), std::invalid_argument);
  }

  TEST_CASE("chain spec validation") {
    CHECK_THROWS_AS(ChainSpec({1.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec({1.0, 0.0}, {0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec({1.0}, {0.0, NAN}), std::invalid_argument);
    CHECK_NOTHROW(ChainSpec({1.0, 2.0}, {0.0, 0.5, 0.0}));
  }

  TEST_CASE("perfect-transfer couplings") {
    const auto c3 = pst_chain(3, 1.0);
    CHECK(c3.tau()[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c3.tau()[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto c2 = pst_chain(2, 1.0);
    CHECK(c2.tau()[0] == 1.0);
    CHECK_THROWS_AS(pst_chain(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(pst_chain(4, 0.0), std::invalid_argument);
  }

  TEST_CASE("edge-modified couplings") {
    const auto c = edge_modified_chain(6, 1.0, 0.5);
    const double expect[] = {0.5, 1, 1, 1, 0.5};
    for (int j = 0; j < 5; ++j) CHECK(c.tau()[j] == expect[j]);
    CHECK(edge_modified_chain(6, 1.0, 1.0, 1.0) == uniform_chain(6, 1.0));

    const auto two = edge_modified_chain(7, 2.0, 0.25, 0.5);
    const double expect2[] = {0.5, 1, 2, 2, 1, 0.5};
    for (int j = 0; j < 6; ++j) CHECK(two.tau()[j] == expect2[j]);

    CHECK_THROWS_AS(edge_modified_chain(6, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(edge_modified_chain(6, 1.0, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(edge_modified_chain(6, 1.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(edge_modified_chain(4, 1.0, 0.5, 0.5), std::invalid_argument);
  }

  TEST_CASE("gaussian trap profile") {
    const auto c = gaussian_trap_chain(100, 1.0, 50.0, 110.0);
    CHECK(c.eps()[49] == doctest::Approx(kConfiningTrapSign * 1.0));
    CHECK(c.eps()[19] / c.eps()[49] == doctest::Approx(std::exp(-900.0 / 12100.0)).epsilon(1e-14));
    CHECK(c.eps()[19] / c.eps()[49] == doctest::Approx(0.9283).epsilon(1e-4));

    // very wide trap: constant shift of the uniform spectrum
    const auto flat = gaussian_trap_chain(5, 1.0, 3.0, 1e9, 1);
    for (double e : flat.eps()) CHECK(e == doctest::Approx(1.0).epsilon(1e-15));
    const auto s = diagonalize(flat);
    const auto u = diagonalize(uniform_chain(5, 1.0));
    for (std::size_t n = 0; n < 5; ++n) CHECK(s.omega()[n] == doctest::Approx(u.omega()[n] + 1.0));

    CHECK_THROWS_AS(gaussian_trap_chain(10, 1.0, 5.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_trap_chain(10, 1.0, 5.0, 2.0, 0), std::invalid_argument);
  }

  TEST_CASE("mirror symmetry predicate") {
    CHECK(mirror_symmetric(uniform_chain(5, 1.0)));
    CHECK(mirror_symmetric(pst_chain(6, 1.0), 1e-14));
    CHECK_FALSE(mirror_symmetric(ChainSpec({1.0, 2.0}, {0, 0, 0})));
    CHECK_FALSE(mirror_symmetric(ChainSpec({1.0, 1.0}, {0.1, 0, 0})));
    CHECK(mirror_symmetric(ChainSpec({1.0, 1.0}, {0.1, 0, 0.1})));
  }

  TEST_CASE("kick state") {
    const auto k1 = kick_state(4, 1);
    const auto k4 = kick_state(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(k1[j] == cplx(j == 0 ? 1.0 : 0.0));
      CHECK(k4[j] == cplx(j == 3 ? 1.0 : 0.0));
    }
    CHECK_THROWS_AS(kick_state(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(kick_state(4, 5), std::invalid_argument);
  }

  TEST_CASE("gaussian wavepacket") {
    const auto single = gaussian_wavepacket(1, 1.0, 1.0);
    CHECK(std::abs(single[0] - cplx(1.0)) < 1e-15);

    const auto flat = gaussian_wavepacket(3, 2.0, 1e8);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(flat[j].real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    const auto packet = gaussian_wavepacket(100, 20.0, 10.0);
    CHECK(std::abs(packet.norm_squared() - 1.0) < 1e-12);
    CHECK(packet[19].real() > packet[18].real());
    CHECK(packet[19].real() > packet[20].real());

    CHECK_THROWS_AS(gaussian_wavepacket(10, 5.0, 0.0), std::invalid_argument);
    // all weight underflows: packet centered far away with a tiny width
    CHECK_THROWS_AS(gaussian_wavepacket(10, 1e6, 0.5), DegenerateStateError);
  }

  TEST_CASE("wave state normalization") {
    CHECK_THROWS_AS(WaveState({cplx(1.0), cplx(1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(WaveState::normalized({cplx(0.0), cplx(0.0)}), DegenerateStateError);
    const auto s = WaveState::normalized({cplx(3.0), cplx(0.0, 4.0)});
    CHECK(s[0].real() == doctest::Approx(0.6));
    CHECK(s[1].imag() == doctest::Approx(0.8));
  }
}
