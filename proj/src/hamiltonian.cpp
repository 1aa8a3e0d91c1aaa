#include "rads/hamiltonian.hpp"

#include <cmath>

#include "rads/error.hpp"
#include "rads/units.hpp"

namespace rads {

double setting_detuning_rad_per_ns(const DeviceConfig& device, const QubitSetting& setting,
                                   int qubit) {
  switch (setting.mode) {
    case Mode::Resonant:
      return 0.0;
    case Mode::Detuned:
      return units::mhz_to_rad_per_ns(setting.detuning_mhz);
    case Mode::Idle:
      return units::mhz_to_rad_per_ns(device.idle_detuning_mhz(qubit));
    case Mode::Off:
      return 0.0;
  }
  return 0.0;
}

Eigen::MatrixXcd build_hamiltonian(const DeviceConfig& device,
                                   const std::vector<QubitSetting>& settings,
                                   const SectorSpace& sector) {
  const int n = sector.n_qubits();
  if (static_cast<int>(settings.size()) != n)
    throw Error("build_hamiltonian: " + std::to_string(settings.size()) + " settings for " +
                std::to_string(n) + " qubits");
  if (device.n_qubits() < n)
    throw Error("build_hamiltonian: device has " + std::to_string(device.n_qubits()) +
                " qubits, sector needs " + std::to_string(n));

  std::vector<double> delta(n), g_ang(n);
  for (int j = 0; j < n; ++j) {
    delta[j] = setting_detuning_rad_per_ns(device, settings[j], j);
    g_ang[j] = settings[j].mode == Mode::Off ? 0.0 : units::mhz_to_rad_per_ns(device.g_mhz[j]);
  }
  const bool has_chi = device.chi_mhz.size() != 0;

  const int dim = sector.dimension();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  for (int i = 0; i < dim; ++i) {
    const BasisConfig& c = sector.config(i);

    double diag = 0.0;
    for (int j = 0; j < n; ++j)
      if (c.qubit_bits[j]) diag += delta[j];
    h(i, i) = diag;

    // sigma_j^+ a : reaches this config's (1_j, p-1) partners, each edge
    // visited exactly once from its higher-photon side.
    if (c.photons >= 1) {
      const double root_n = std::sqrt(static_cast<double>(c.photons));
      for (int j = 0; j < n; ++j) {
        if (c.qubit_bits[j] || g_ang[j] == 0.0) continue;
        BasisConfig t = c;
        t.qubit_bits[j] = 1;
        t.photons -= 1;
        const int ti = sector.index_of(t);
        const double amp = g_ang[j] * root_n;
        h(ti, i) += amp;
        h(i, ti) += amp;
      }
    }

    // chi_jk flip-flop; selecting excited < ground visits each pair once.
    if (has_chi) {
      for (int j = 0; j < n; ++j) {
        if (!c.qubit_bits[j] || settings[j].mode == Mode::Off) continue;
        for (int k = j + 1; k < n; ++k) {
          if (c.qubit_bits[k] || settings[k].mode == Mode::Off) continue;
          const double chi = device.chi_mhz(j, k);
          if (chi == 0.0) continue;
          BasisConfig t = c;
          t.qubit_bits[j] = 0;
          t.qubit_bits[k] = 1;
          const int ti = sector.index_of(t);
          const double amp = units::mhz_to_rad_per_ns(chi);
          h(ti, i) += amp;
          h(i, ti) += amp;
        }
      }
    }
  }
  return h;
}

}  // namespace rads
