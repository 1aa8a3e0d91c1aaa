#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rads/device.hpp"
#include "rads/sector.hpp"

namespace rads {

// Sector-restricted Hamiltonian in the frame rotating at the resonator
// frequency, in rad/ns.  The diagonal carries only qubit detunings; the
// off-diagonals are the photon exchange terms g_j*sqrt(n) and, when both
// partners are active, the chi_jk qubit-qubit flip-flops.  Qubits in Off
// mode are dropped from the dynamics entirely (no detuning, no coupling).
// Hermitian by construction: every entry is real and filled symmetrically.
Eigen::MatrixXcd build_hamiltonian(const DeviceConfig& device,
                                   const std::vector<QubitSetting>& settings,
                                   const SectorSpace& sector);

// Detuning of one qubit under a setting, in rad/ns (0 for Resonant and Off).
double setting_detuning_rad_per_ns(const DeviceConfig& device, const QubitSetting& setting,
                                   int qubit);

}  // namespace rads
