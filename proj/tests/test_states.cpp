#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rads/device.hpp"
#include "rads/error.hpp"
#include "rads/hamiltonian.hpp"
#include "rads/states.hpp"
#include "rads/units.hpp"

using namespace rads;
using cx = std::complex<double>;

namespace {

const double g_ang = units::mhz_to_rad_per_ns(13.5);

BasisConfig bits(std::vector<std::uint8_t> b, int photons) { return {std::move(b), photons}; }

StateVector ground_with_photon(int n, int n_max) {
  return product_basis_state(n, {}, 1, n_max);
}

}  // namespace

TEST_CASE("bright state: equal real amplitudes") {
  const StateVector b = bright_state(4);
  CHECK(b.space().total_excitation() == 1);
  for (int q = 0; q < 4; ++q) {
    std::vector<std::uint8_t> v(4, 0);
    v[q] = 1;
    const cx a = b.amplitude(bits(v, 0));
    CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a.imag() == 0.0);
    CHECK(b.qubit_p1(q) == doctest::Approx(0.25).epsilon(1e-12));
  }
  CHECK(b.amplitude(bits({0, 0, 0, 0}, 1)) == cx(0.0, 0.0));
  CHECK(b.photon_p(1) == 0.0);
  CHECK(b.mean_photon() == 0.0);
}

TEST_CASE("first spin wave of four: amplitudes (-i,-1,i,1)/2") {
  const StateVector d = dark_state(4, 1);
  const std::vector<cx> expect = {{0.0, -0.5}, {-0.5, 0.0}, {0.0, 0.5}, {0.5, 0.0}};
  for (int q = 0; q < 4; ++q) {
    std::vector<std::uint8_t> v(4, 0);
    v[q] = 1;
    const cx a = d.amplitude(bits(v, 0));
    CHECK(std::abs(a - expect[q]) < 1e-15);
  }
}

TEST_CASE("spin waves are orthonormal and dark against the bright state") {
  for (int n : {2, 3, 4, 7}) {
    const StateVector b = bright_state(n);
    for (int m = 1; m < n; ++m) {
      const StateVector dm = dark_state(n, m);
      CHECK(dm.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(fidelity(b, dm) < 1e-28);
      for (int m2 = m + 1; m2 < n; ++m2)
        CHECK(fidelity(dm, dark_state(n, m2)) < 1e-28);
    }
  }
}

TEST_CASE("m = 0 and m = N are not spin waves") {
  CHECK_THROWS_AS(dark_state(4, 0), Error);
  CHECK_THROWS_AS(dark_state(4, 4), Error);
  CHECK_THROWS_AS(dark_state(1, 1), Error);
}

TEST_CASE("collective ladder norms: sqrt(2(N-1)) bright, sqrt(N-2) spin wave") {
  // Dicke ladder: |B> is |J = N/2, M = -N/2 + 1>, so |J+ B| = sqrt(2(N-1))
  for (int n : {3, 4, 6, 10}) {
    auto [bs, bv] = collective_raise(bright_state(n, 2));
    CHECK(bv.norm() == doctest::Approx(std::sqrt(2.0 * (n - 1))).epsilon(1e-13));
    for (int m = 1; m < n; ++m) {
      auto [ds, dv] = collective_raise(dark_state(n, m, 2));
      CHECK(dv.norm() ==
            doctest::Approx(std::sqrt(static_cast<double>(n - 2))).epsilon(1e-12));
    }
  }
}

TEST_CASE("singlet pair state: frozen amplitudes and pair structure") {
  const StateVector s = singlet4();
  CHECK(s.space().n_qubits() == 4);
  CHECK(s.space().total_excitation() == 2);
  CHECK(std::abs(s.amplitude(bits({1, 1, 0, 0}, 0)) - cx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(s.amplitude(bits({0, 1, 1, 0}, 0)) - cx(-0.5, 0.0)) < 1e-15);
  CHECK(std::abs(s.amplitude(bits({0, 0, 1, 1}, 0)) - cx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(s.amplitude(bits({1, 0, 0, 1}, 0)) - cx(-0.5, 0.0)) < 1e-15);
  CHECK(s.amplitude(bits({1, 0, 1, 0}, 0)) == cx(0.0, 0.0));
  CHECK(s.amplitude(bits({0, 1, 0, 1}, 0)) == cx(0.0, 0.0));

  // the same four amplitudes factor as pair singlets on (1,3) and (2,4)
  for (int b0 : {0, 1})
    for (int b1 : {0, 1})
      for (int b2 : {0, 1})
        for (int b3 : {0, 1}) {
          if (b0 + b1 + b2 + b3 != 2) continue;
          const double first = b0 == 1 && b2 == 0 ? 1 : (b0 == 0 && b2 == 1 ? -1 : 0);
          const double second = b1 == 1 && b3 == 0 ? 1 : (b1 == 0 && b3 == 1 ? -1 : 0);
          const cx expect(first * second / 2.0, 0.0);
          const cx got = s.amplitude(bits({static_cast<std::uint8_t>(b0),
                                           static_cast<std::uint8_t>(b1),
                                           static_cast<std::uint8_t>(b2),
                                           static_cast<std::uint8_t>(b3)},
                                          0));
          CHECK(std::abs(got - expect) < 1e-15);
        }
}

TEST_CASE("both collective ladders annihilate the singlet") {
  auto [rs, rv] = collective_raise(singlet4());
  auto [ls, lv] = collective_lower(singlet4());
  CHECK(rv.norm() < 1e-14);
  CHECK(lv.norm() < 1e-14);
}

TEST_CASE("coupling matrix elements: bright sqrt(N) g, spin waves zero") {
  for (int n : {2, 4, 6}) {
    const DeviceConfig dev = DeviceConfig::homogeneous(n);
    const SectorSpace s = SectorSpace::enumerate(n, 1, 1);
    const Eigen::MatrixXcd h =
        build_hamiltonian(dev, std::vector<QubitSetting>(n, QubitSetting::resonant()), s);
    const StateVector g1 = ground_with_photon(n, 1);
    const StateVector b = bright_state(n, 1);
    const cx me = (g1.amplitudes().adjoint() * h * b.amplitudes())(0);
    CHECK(std::abs(me) == doctest::Approx(std::sqrt(n) * g_ang).epsilon(1e-12));
    for (int m = 1; m < n; ++m) {
      const StateVector dm = dark_state(n, m, 1);
      const cx zero = (g1.amplitudes().adjoint() * h * dm.amplitudes())(0);
      CHECK(std::abs(zero) < 1e-14);
    }
  }
}

TEST_CASE("phase gates rotate a spin wave back to bright") {
  for (int n = 2; n <= 8; ++n)
    for (int m = 1; m < n; ++m) {
      const StateVector dm = dark_state(n, m);
      std::vector<double> thetas(n);
      for (int q = 0; q < n; ++q) thetas[q] = m * (q + 1) * units::two_pi / n;
      const StateVector rotated = apply_phase_gates(dm, thetas);
      CHECK(fidelity(rotated, bright_state(n)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("phase gate angle count must match") {
  CHECK_THROWS_AS(apply_phase_gates(bright_state(3), {0.0, 0.0}), Error);
}

TEST_CASE("product basis states") {
  const StateVector s = product_basis_state(3, {0, 2}, 1, 2);
  CHECK(s.space().total_excitation() == 3);
  CHECK(std::abs(s.amplitude(bits({1, 0, 1}, 1)) - cx(1.0, 0.0)) < 1e-15);
  CHECK(s.qubit_p1(0) == 1.0);
  CHECK(s.qubit_p1(1) == 0.0);
  CHECK(s.photon_p(1) == 1.0);
  CHECK(s.mean_photon() == 1.0);

  CHECK_THROWS_AS(product_basis_state(3, {0, 0}, 0, 2), Error);  // duplicate
  CHECK_THROWS_AS(product_basis_state(3, {3}, 0, 2), Error);     // out of range
  CHECK_THROWS_AS(product_basis_state(3, {}, 3, 2), Error);      // beyond cutoff
}

TEST_CASE("flip_qubit relabels a product factor") {
  const StateVector s = product_basis_state(2, {0}, 1, 2);  // |10,1>, k = 2
  const StateVector down = flip_qubit(s, 0);
  CHECK(down.space().total_excitation() == 1);
  CHECK(std::abs(down.amplitude(bits({0, 0}, 1)) - cx(1.0, 0.0)) < 1e-15);

  const StateVector up = flip_qubit(down, 1);
  CHECK(up.space().total_excitation() == 2);
  CHECK(std::abs(up.amplitude(bits({0, 1}, 1)) - cx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("flip_qubit rejects an entangled qubit") {
  CHECK_THROWS_AS(flip_qubit(bright_state(2), 0), Error);
  try {
    flip_qubit(bright_state(3), 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("entangled") != std::string::npos);
  }
}

TEST_CASE("flip_qubit drops residual weight below tolerance") {
  const SectorSpace space = SectorSpace::enumerate(2, 1, 1);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(3);
  const double eps = 1e-10;
  amp(space.index_of(bits({1, 0}, 0))) = std::sqrt(1.0 - eps * eps);
  amp(space.index_of(bits({0, 1}, 0))) = eps;
  const StateVector s(space, amp);
  const StateVector flipped = flip_qubit(s, 0);
  CHECK(flipped.space().total_excitation() == 0);
  CHECK(std::abs(std::abs(flipped.amplitude(bits({0, 0}, 0))) - 1.0) < 1e-9);
}

TEST_CASE("add_photons shifts the resonator") {
  const StateVector s = add_photons(singlet4(), 1);
  CHECK(s.space().total_excitation() == 3);
  CHECK(std::abs(s.amplitude(bits({1, 1, 0, 0}, 1)) - cx(0.5, 0.0)) < 1e-15);
  CHECK(s.mean_photon() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(add_photons(product_basis_state(1, {}, 2, 2), 1), Error);
  CHECK_THROWS_AS(add_photons(singlet4(), -1), Error);
}

TEST_CASE("prepend_ground_qubits shifts indices up") {
  const StateVector d = dark_state(3, 1);
  const StateVector big = prepend_ground_qubits(d, 2);
  CHECK(big.space().n_qubits() == 5);
  CHECK(big.space().total_excitation() == 1);
  for (int q = 0; q < 3; ++q) {
    std::vector<std::uint8_t> small_bits(3, 0), big_bits(5, 0);
    small_bits[q] = 1;
    big_bits[q + 2] = 1;
    CHECK(std::abs(big.amplitude(bits(big_bits, 0)) - d.amplitude(bits(small_bits, 0))) < 1e-15);
  }
  CHECK(big.qubit_p1(0) == 0.0);
}

TEST_CASE("sqrt(iSWAP) squares to iSWAP") {
  const Eigen::Matrix4cd u = sqrt_iswap();
  CHECK((u * u.adjoint() - Eigen::Matrix4cd::Identity()).norm() < 1e-15);
  Eigen::Matrix4cd iswap = Eigen::Matrix4cd::Identity();
  iswap(1, 1) = iswap(2, 2) = 0.0;
  iswap(1, 2) = iswap(2, 1) = cx(0.0, -1.0);
  CHECK((u * u - iswap).norm() < 1e-15);
}

TEST_CASE("state text round-trip is exact") {
  const StateVector d = dark_state(5, 2);
  const std::string text = to_text(d);
  const StateVector back = state_from_text(d.space(), text);
  CHECK((back.amplitudes() - d.amplitudes()).norm() == 0.0);
}

TEST_CASE("norm guard") {
  const SectorSpace space = SectorSpace::enumerate(2, 1, 1);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(3);
  amp(0) = 0.5;
  CHECK_THROWS_AS(StateVector(space, amp), Error);
  Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(2);
  wrong(0) = 1.0;
  CHECK_THROWS_AS(StateVector(space, wrong), Error);
}

TEST_CASE("fidelity requires matching shapes") {
  CHECK_THROWS_AS(fidelity(bright_state(2), bright_state(3)), Error);
  CHECK(fidelity(bright_state(4), bright_state(4)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("amplitude outside the sector reads zero") {
  CHECK(bright_state(2).amplitude(bits({1, 1}, 0)) == cx(0.0, 0.0));
}
