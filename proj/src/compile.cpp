#include "rads/compile.hpp"

#include <bit>
#include <cmath>

#include "rads/error.hpp"
#include "rads/format.hpp"
#include "rads/hamiltonian.hpp"

namespace rads {

namespace {

void validate_gate(const GateEvent& gate, int n_qubits) {
  if (const PiPulse* pi = std::get_if<PiPulse>(&gate)) {
    if (pi->qubit < 0 || pi->qubit >= n_qubits)
      throw Error("pi pulse qubit " + std::to_string(pi->qubit + 1) + " out of range");
    return;
  }
  if (const PhaseGate* ph = std::get_if<PhaseGate>(&gate)) {
    if (ph->qubit < 0 || ph->qubit >= n_qubits)
      throw Error("phase gate qubit " + std::to_string(ph->qubit + 1) + " out of range");
    if (!std::isfinite(ph->theta)) throw Error("phase gate angle is not finite");
    return;
  }
  const CustomGate& c = std::get<CustomGate>(gate);
  if (c.qubits.empty() || c.qubits.size() > 2)
    throw Error("custom gate acts on 1 or 2 qubits");
  for (int q : c.qubits)
    if (q < 0 || q >= n_qubits)
      throw Error("custom gate qubit " + std::to_string(q + 1) + " out of range");
  if (c.qubits.size() == 2 && c.qubits[0] == c.qubits[1])
    throw Error("custom gate qubits must be distinct");
  const int d = 1 << c.qubits.size();
  if (c.unitary.rows() != d || c.unitary.cols() != d)
    throw Error("custom gate matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  const double udev = (c.unitary.adjoint() * c.unitary - Eigen::MatrixXcd::Identity(d, d))
                          .cwiseAbs()
                          .maxCoeff();
  if (udev > 1e-10)
    throw Error("custom gate matrix is not unitary (deviation " + format_shortest(udev) + ")");
  // excitation bookkeeping relies on weight-preserving gates
  for (int r = 0; r < d; ++r)
    for (int col = 0; col < d; ++col)
      if (std::popcount(static_cast<unsigned>(r)) != std::popcount(static_cast<unsigned>(col)) &&
          std::abs(c.unitary(r, col)) > 1e-12)
        throw Error("custom gate mixes excitation numbers (entry " + std::to_string(r) + "," +
                    std::to_string(col) + ")");
}

}  // namespace

CompiledProgram::CompiledProgram(Schedule schedule, DeviceConfig device)
    : schedule_(std::move(schedule)), device_(std::move(device)) {
  const int n = schedule_.n_qubits;
  if (n < 1) throw Error("schedule has no qubits");
  if (device_.n_qubits() < n)
    throw Error("schedule uses " + std::to_string(n) + " qubits, device has " +
                std::to_string(device_.n_qubits()));
  device_.validate();

  int pi_count = 0;
  for (const auto& item : schedule_.items) {
    if (const Segment* seg = std::get_if<Segment>(&item)) {
      if (!(std::isfinite(seg->duration_ns) && seg->duration_ns >= 0.0))
        throw Error("segment duration must be finite and >= 0");
      if (static_cast<int>(seg->settings.size()) != n)
        throw Error("segment has " + std::to_string(seg->settings.size()) + " settings for " +
                    std::to_string(n) + " qubits");
      total_ns_ += seg->duration_ns;
    } else {
      const GateEvent& g = std::get<GateEvent>(item);
      validate_gate(g, n);
      if (std::holds_alternative<PiPulse>(g)) ++pi_count;
    }
  }

  const InitialState& init = schedule_.init;
  if (init.photons < 0) throw Error("initial photon number must be >= 0");
  if (init.named == InitialState::Named::Singlet4) {
    if (n != 4) throw Error("singlet initialization needs exactly 4 qubits");
    if (!init.excited_qubits.empty())
      throw Error("singlet initialization conflicts with excited qubits");
    if (init.photons > 1) throw Error("singlet initialization supports 0 or 1 photon");
  }
  for (int q : init.excited_qubits)
    if (q < 0 || q >= n) throw Error("excited qubit " + std::to_string(q + 1) + " out of range");

  k_init_ = static_cast<int>(init.excited_qubits.size()) + init.photons +
            (init.named == InitialState::Named::Singlet4 ? 2 : 0);
  const int k_reach = k_init_ + pi_count;
  n_max_ = device_.n_max > 0 ? device_.n_max : k_reach + 1;
  if (n_max_ < init.photons)
    throw Error("photon cutoff " + std::to_string(n_max_) + " below the initial Fock state " +
                std::to_string(init.photons));

  sample_times_ = schedule_.sample_times();
  for (double t : sample_times_)
    if (t < 0.0 || t > total_ns_ + 1e-9)
      throw Error("sample time " + format_shortest(t) + " ns outside the schedule duration " +
                  format_shortest(total_ns_) + " ns");
}

StateVector CompiledProgram::initial_state() const {
  const InitialState& init = schedule_.init;
  if (init.named == InitialState::Named::Singlet4)
    return add_photons(singlet4(n_max_), init.photons);
  return product_basis_state(schedule_.n_qubits, init.excited_qubits, init.photons, n_max_);
}

const Eigen::MatrixXcd& CompiledProgram::segment_hamiltonian(int item_index,
                                                             const SectorSpace& sector) const {
  if (item_index < 0 || item_index >= static_cast<int>(schedule_.items.size()))
    throw Error("segment index " + std::to_string(item_index) + " out of range");
  const Segment* seg = std::get_if<Segment>(&schedule_.items[item_index]);
  if (!seg) throw Error("schedule item " + std::to_string(item_index) + " is not a segment");
  if (sector.n_qubits() != schedule_.n_qubits || sector.photon_cutoff() != n_max_)
    throw Error("sector shape does not belong to this program");

  const std::pair<int, int> key{item_index, sector.total_excitation()};
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, build_hamiltonian(device_, seg->settings, sector)).first;
  return it->second;
}

}  // namespace rads
