#pragma once

#include <Eigen/Dense>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "rads/device.hpp"
#include "rads/schedule.hpp"
#include "rads/sector.hpp"
#include "rads/states.hpp"

namespace rads {

// A schedule validated against a device.  Per-segment Hamiltonians are built
// on demand: a pi pulse moves the state between excitation sectors, so the
// sector a given segment acts in is only known while running.
class CompiledProgram {
 public:
  CompiledProgram(Schedule schedule, DeviceConfig device);

  const Schedule& schedule() const { return schedule_; }
  const DeviceConfig& device() const { return device_; }

  // Photon cutoff: the device's explicit n_max, or the largest reachable
  // excitation plus one.
  int n_max() const { return n_max_; }
  int initial_excitation() const { return k_init_; }
  double total_duration_ns() const { return total_ns_; }
  const std::vector<double>& sample_times() const { return sample_times_; }

  StateVector initial_state() const;

  // Hamiltonian of the schedule item at item_index (which must hold a
  // Segment), restricted to the given sector.  Cached per (item, k).
  const Eigen::MatrixXcd& segment_hamiltonian(int item_index, const SectorSpace& sector) const;

 private:
  Schedule schedule_;
  DeviceConfig device_;
  int n_max_ = 0;
  int k_init_ = 0;
  double total_ns_ = 0.0;
  std::vector<double> sample_times_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<int, int>, Eigen::MatrixXcd> cache_;
};

}  // namespace rads
