#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "rads/device.hpp"
#include "rads/error.hpp"
#include "rads/hamiltonian.hpp"
#include "rads/sector.hpp"
#include "rads/units.hpp"

using namespace rads;

namespace {

const double g_ang = units::mhz_to_rad_per_ns(13.5);

std::vector<QubitSetting> all_resonant(int n) {
  return std::vector<QubitSetting>(n, QubitSetting::resonant());
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
  return ev;
}

}  // namespace

TEST_CASE("angular unit conversion") {
  CHECK(units::mhz_to_rad_per_ns(13.5) == doctest::Approx(0.0848230016469244).epsilon(1e-15));
  CHECK(units::rad_per_ns_to_mhz(units::mhz_to_rad_per_ns(27.0)) ==
        doctest::Approx(27.0).epsilon(1e-14));
  CHECK(units::ghz_to_rad_per_ns(1.0) == doctest::Approx(units::two_pi).epsilon(1e-15));
}

TEST_CASE("single qubit on resonance: vacuum Rabi block") {
  const DeviceConfig d = DeviceConfig::homogeneous(1);
  const SectorSpace s = SectorSpace::enumerate(1, 1, 1);  // {|0,1>, |1,0>}
  const Eigen::MatrixXcd h = build_hamiltonian(d, all_resonant(1), s);
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 0) == std::complex<double>(0.0, 0.0));
  CHECK(h(1, 1) == std::complex<double>(0.0, 0.0));
  CHECK(h(0, 1).real() == doctest::Approx(g_ang).epsilon(1e-15));
  CHECK(h(0, 1).imag() == 0.0);
  CHECK(h(1, 0) == h(0, 1));
}

TEST_CASE("detuning sits on the diagonal only") {
  const DeviceConfig d = DeviceConfig::homogeneous(1);
  const SectorSpace s = SectorSpace::enumerate(1, 1, 1);
  const Eigen::MatrixXcd h =
      build_hamiltonian(d, {QubitSetting::detuned(50.0)}, s);
  CHECK(h(0, 0).real() == 0.0);  // photon config carries no detuning
  CHECK(h(1, 1).real() == doctest::Approx(units::mhz_to_rad_per_ns(50.0)).epsilon(1e-15));
  CHECK(h(0, 1).real() == doctest::Approx(g_ang).epsilon(1e-15));
}

TEST_CASE("idle mode uses the device idle point") {
  const DeviceConfig d = DeviceConfig::homogeneous(2);
  const SectorSpace s = SectorSpace::enumerate(2, 1, 1);
  const Eigen::MatrixXcd h =
      build_hamiltonian(d, {QubitSetting::resonant(), QubitSetting::idle()}, s);
  // row 2 = |01,0>: qubit 2 excited at its idle point, (5.39 - 5.69) GHz
  CHECK(h(2, 2).real() == units::mhz_to_rad_per_ns(d.idle_detuning_mhz(1)));
  CHECK(h(2, 2).real() == doctest::Approx(units::mhz_to_rad_per_ns(-300.0)).epsilon(1e-12));
  CHECK(h(0, 2).real() == doctest::Approx(g_ang).epsilon(1e-15));  // still coupled
}

TEST_CASE("off mode removes the qubit entirely") {
  const DeviceConfig d = DeviceConfig::homogeneous(2);
  const SectorSpace s = SectorSpace::enumerate(2, 1, 1);
  const Eigen::MatrixXcd h =
      build_hamiltonian(d, {QubitSetting::resonant(), QubitSetting::off()}, s);
  CHECK(h(0, 2) == std::complex<double>(0.0, 0.0));
  CHECK(h(2, 2) == std::complex<double>(0.0, 0.0));
  CHECK(h(0, 1).real() == doctest::Approx(g_ang).epsilon(1e-15));
}

TEST_CASE("two resonant qubits: split +-sqrt(2) g and a dark zero") {
  const DeviceConfig d = DeviceConfig::homogeneous(2);
  const SectorSpace s = SectorSpace::enumerate(2, 1, 1);
  const Eigen::MatrixXcd h = build_hamiltonian(d, all_resonant(2), s);
  const auto ev = eigenvalues(h);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0) * g_ang).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(ev[1]) < 1e-14);
  CHECK(ev[2] == doctest::Approx(std::sqrt(2.0) * g_ang).epsilon(1e-14));
}

TEST_CASE("collective splitting scales as sqrt(N)") {
  for (int n : {3, 5, 8}) {
    const DeviceConfig d = DeviceConfig::homogeneous(n);
    const SectorSpace s = SectorSpace::enumerate(n, 1, 1);
    const auto ev = eigenvalues(build_hamiltonian(d, all_resonant(n), s));
    REQUIRE(static_cast<int>(ev.size()) == n + 1);
    CHECK(ev.front() == doctest::Approx(-std::sqrt(n) * g_ang).epsilon(1e-13));
    CHECK(ev.back() == doctest::Approx(std::sqrt(n) * g_ang).epsilon(1e-13));
    for (int i = 1; i < n; ++i) CHECK(std::abs(ev[i]) < 1e-13);
  }
}

TEST_CASE("photon exchange carries sqrt(n) enhancement") {
  const DeviceConfig d = DeviceConfig::homogeneous(2);
  const SectorSpace s = SectorSpace::enumerate(2, 2, 2);
  const Eigen::MatrixXcd h = build_hamiltonian(d, all_resonant(2), s);
  const int from = s.index_of(BasisConfig{{0, 0}, 2});
  const int to = s.index_of(BasisConfig{{1, 0}, 1});
  CHECK(h(from, to).real() == doctest::Approx(std::sqrt(2.0) * g_ang).epsilon(1e-15));
}

TEST_CASE("crosstalk flip-flop") {
  DeviceConfig d = DeviceConfig::homogeneous(2);
  d.chi_mhz(0, 1) = d.chi_mhz(1, 0) = 0.25;
  const SectorSpace s = SectorSpace::enumerate(2, 1, 1);

  const Eigen::MatrixXcd h = build_hamiltonian(d, all_resonant(2), s);
  CHECK(h(1, 2).real() == doctest::Approx(units::mhz_to_rad_per_ns(0.25)).epsilon(1e-15));
  CHECK(h(2, 1) == h(1, 2));

  // an off partner silences the flip-flop
  const Eigen::MatrixXcd h_off =
      build_hamiltonian(d, {QubitSetting::resonant(), QubitSetting::off()}, s);
  CHECK(h_off(1, 2) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("hermitian to the last bit under disorder") {
  DeviceConfig d = apply_disorder(DeviceConfig::homogeneous(6), {5.0, 0.2, 11});
  std::vector<QubitSetting> settings = {
      QubitSetting::resonant(), QubitSetting::detuned(17.3), QubitSetting::idle(),
      QubitSetting::off(),      QubitSetting::resonant(),    QubitSetting::detuned(-42.0)};
  for (int k : {1, 2, 3}) {
    const SectorSpace s = SectorSpace::enumerate(6, k, 2);
    const Eigen::MatrixXcd h = build_hamiltonian(d, settings, s);
    CHECK((h - h.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("device may be larger than the sector") {
  const DeviceConfig d = DeviceConfig::homogeneous(11);
  const SectorSpace s = SectorSpace::enumerate(2, 1, 1);
  const Eigen::MatrixXcd h = build_hamiltonian(d, all_resonant(2), s);
  CHECK(h.rows() == 3);
  CHECK(h(0, 1).real() == doctest::Approx(g_ang).epsilon(1e-15));
}

TEST_CASE("settings must match the sector") {
  const DeviceConfig d = DeviceConfig::homogeneous(3);
  const SectorSpace s = SectorSpace::enumerate(3, 1, 1);
  CHECK_THROWS_AS(build_hamiltonian(d, all_resonant(2), s), Error);
}

TEST_CASE("setting detunings") {
  const DeviceConfig d = DeviceConfig::homogeneous(2);
  CHECK(setting_detuning_rad_per_ns(d, QubitSetting::resonant(), 0) == 0.0);
  CHECK(setting_detuning_rad_per_ns(d, QubitSetting::off(), 0) == 0.0);
  CHECK(setting_detuning_rad_per_ns(d, QubitSetting::detuned(50.0), 0) ==
        doctest::Approx(units::mhz_to_rad_per_ns(50.0)).epsilon(1e-15));
  CHECK(setting_detuning_rad_per_ns(d, QubitSetting::idle(), 1) ==
        units::mhz_to_rad_per_ns(d.idle_detuning_mhz(1)));
}
