#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "rads/compile.hpp"
#include "rads/device.hpp"
#include "rads/schedule.hpp"
#include "rads/states.hpp"

namespace rads {

// Sampled observable record of one run.
struct Trajectory {
  int n_qubits = 0;
  std::vector<double> times_ns;
  std::vector<std::vector<double>> p1;  // [sample][qubit]
  std::vector<double> photon_p1;        // P(n = 1)
  std::vector<double> mean_photon;
  std::vector<double> norm;
  std::vector<double> energy;     // <H> of the active segment, rad/ns
  std::vector<int> item_index;    // schedule item each sample landed in
  std::vector<int> excitation;    // sector k at the sample
  std::vector<StateVector> snapshots;  // filled when requested
  std::optional<StateVector> final_state;

  size_t size() const { return times_ns.size(); }
};

struct RunOptions {
  EngineKind engine = EngineKind::Reference;
  bool record_snapshots = false;
};

// exp(-iHt) |state>.  Reference: spectral decomposition.  Integrator:
// classic fixed-step RK4 with step <= 0.01/|H|_inf.  Rejects H with
// Hermiticity deviation beyond 1e-10 and negative t.
StateVector propagate_segment(const StateVector& state, const Eigen::MatrixXcd& h, double t_ns,
                              EngineKind engine);

Trajectory run(const CompiledProgram& program, const RunOptions& opts = {});
Trajectory run(const Schedule& schedule, const DeviceConfig& device, const RunOptions& opts = {});

// Worst-case deviations over a trajectory: norm from 1, excitation sum rule
// from k, segment energy drift from its value at the first sample of each
// contiguous stretch inside one item.
struct ConservationReport {
  double max_norm_dev = 0.0;
  double max_sum_dev = 0.0;
  double max_energy_dev = 0.0;
};
ConservationReport conservation_report(const Trajectory& trajectory);

}  // namespace rads
