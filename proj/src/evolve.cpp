#include "rads/evolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include "rads/error.hpp"
#include "rads/format.hpp"

namespace rads {

using namespace std::complex_literals;

namespace {

void check_hermitian(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw Error("propagate: matrix is not square");
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10)
    throw Error("propagate: matrix deviates from Hermitian by " + format_shortest(dev));
}

double inf_norm(const Eigen::MatrixXcd& h) {
  return h.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::VectorXcd rk4_advance(const Eigen::MatrixXcd& h, Eigen::VectorXcd psi, double dt,
                             double step_bound) {
  if (dt <= 0.0) return psi;
  const long long steps =
      step_bound > 0.0 ? std::max<long long>(1, static_cast<long long>(std::ceil(dt / step_bound)))
                       : 1;
  const double hstep = dt / steps;
  for (long long s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = -1.0i * (h * psi);
    const Eigen::VectorXcd k2 = -1.0i * (h * (psi + 0.5 * hstep * k1));
    const Eigen::VectorXcd k3 = -1.0i * (h * (psi + 0.5 * hstep * k2));
    const Eigen::VectorXcd k4 = -1.0i * (h * (psi + hstep * k3));
    psi += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

// Spectral propagator, decomposed once per segment; states at arbitrary
// offsets cost one dense mat-vec.
class SpectralPropagator {
 public:
  SpectralPropagator(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw Error("propagate: eigendecomposition failed");
    vectors_ = es.eigenvectors();
    values_ = es.eigenvalues();
    coeffs_ = vectors_.adjoint() * psi0;
  }

  Eigen::VectorXcd at(double dt) const {
    Eigen::VectorXcd rotated(coeffs_.size());
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
      rotated(i) = std::exp(-1.0i * values_(i) * dt) * coeffs_(i);
    return vectors_ * rotated;
  }

 private:
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd values_;
  Eigen::VectorXcd coeffs_;
};

}  // namespace

StateVector propagate_segment(const StateVector& state, const Eigen::MatrixXcd& h, double t_ns,
                              EngineKind engine) {
  check_hermitian(h);
  if (h.rows() != state.space().dimension())
    throw Error("propagate: matrix dimension " + std::to_string(h.rows()) + " for state dimension " +
                std::to_string(state.space().dimension()));
  if (!(t_ns >= 0.0)) throw Error("propagate: time must be >= 0");
  if (t_ns == 0.0) return state;
  Eigen::VectorXcd amp;
  if (engine == EngineKind::Reference) {
    amp = SpectralPropagator(h, state.amplitudes()).at(t_ns);
  } else {
    amp = rk4_advance(h, state.amplitudes(), t_ns, 0.01 / std::max(inf_norm(h), 1e-300));
  }
  return StateVector(state.space(), std::move(amp), 1e-7);
}

namespace {

StateVector apply_custom(const StateVector& state, const CustomGate& gate) {
  const SectorSpace& space = state.space();
  const int nq = static_cast<int>(gate.qubits.size());
  const int d = 1 << nq;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(space.dimension());
  for (int i = 0; i < space.dimension(); ++i) {
    const std::complex<double> a = state.amplitudes()(i);
    if (a == 0.0) continue;
    const BasisConfig& c = space.config(i);
    int col = 0;
    for (int b = 0; b < nq; ++b) col |= c.qubit_bits[gate.qubits[b]] << b;
    for (int row = 0; row < d; ++row) {
      if (std::popcount(static_cast<unsigned>(row)) !=
          std::popcount(static_cast<unsigned>(col)))
        continue;  // weight-mixing entries were checked to vanish at compile
      const std::complex<double> u = gate.unitary(row, col);
      if (u == 0.0) continue;
      BasisConfig t = c;
      for (int b = 0; b < nq; ++b) t.qubit_bits[gate.qubits[b]] = (row >> b) & 1;
      out(space.index_of(t)) += u * a;
    }
  }
  return StateVector(space, std::move(out), 1e-7);
}

StateVector apply_gate(const StateVector& state, const GateEvent& gate) {
  if (const PiPulse* pi = std::get_if<PiPulse>(&gate)) return flip_qubit(state, pi->qubit);
  if (const PhaseGate* ph = std::get_if<PhaseGate>(&gate)) {
    std::vector<double> thetas(state.space().n_qubits(), 0.0);
    thetas[ph->qubit] = ph->theta;
    return apply_phase_gates(state, thetas);
  }
  return apply_custom(state, std::get<CustomGate>(gate));
}

}  // namespace

Trajectory run(const CompiledProgram& program, const RunOptions& opts) {
  const Schedule& sched = program.schedule();
  const std::vector<double>& samples = program.sample_times();
  StateVector state = program.initial_state();

  Trajectory traj;
  traj.n_qubits = sched.n_qubits;

  const auto record = [&](const StateVector& st, double t_abs, int item,
                          const Eigen::MatrixXcd* h) {
    traj.times_ns.push_back(t_abs);
    std::vector<double> p1(sched.n_qubits);
    for (int q = 0; q < sched.n_qubits; ++q) p1[q] = st.qubit_p1(q);
    traj.p1.push_back(std::move(p1));
    traj.photon_p1.push_back(st.photon_p(1));
    traj.mean_photon.push_back(st.mean_photon());
    traj.norm.push_back(st.norm());
    traj.energy.push_back(
        h ? (st.amplitudes().adjoint() * (*h) * st.amplitudes())(0).real() : 0.0);
    traj.item_index.push_back(item);
    traj.excitation.push_back(st.space().total_excitation());
    if (opts.record_snapshots) traj.snapshots.push_back(st);
  };

  size_t si = 0;
  double t0 = 0.0;
  int last_item = -1;
  const Eigen::MatrixXcd* last_h = nullptr;

  for (size_t it = 0; it < sched.items.size(); ++it) {
    if (const Segment* seg = std::get_if<Segment>(&sched.items[it])) {
      const Eigen::MatrixXcd& h = program.segment_hamiltonian(static_cast<int>(it), state.space());
      check_hermitian(h);
      const double t1 = t0 + seg->duration_ns;
      if (opts.engine == EngineKind::Reference) {
        const SpectralPropagator prop(h, state.amplitudes());
        while (si < samples.size() && samples[si] < t1) {
          const double dt = std::clamp(samples[si] - t0, 0.0, seg->duration_ns);
          record(StateVector(state.space(), prop.at(dt), 1e-7), samples[si],
                 static_cast<int>(it), &h);
          ++si;
        }
        state = StateVector(state.space(), prop.at(seg->duration_ns), 1e-7);
      } else {
        const double bound = 0.01 / std::max(inf_norm(h), 1e-300);
        double t_cur = t0;
        Eigen::VectorXcd psi = state.amplitudes();
        while (si < samples.size() && samples[si] < t1) {
          const double target = std::clamp(samples[si], t0, t1);
          psi = rk4_advance(h, std::move(psi), target - t_cur, bound);
          t_cur = target;
          record(StateVector(state.space(), psi, 1e-7), samples[si], static_cast<int>(it), &h);
          ++si;
        }
        psi = rk4_advance(h, std::move(psi), t1 - t_cur, bound);
        state = StateVector(state.space(), std::move(psi), 1e-7);
      }
      t0 = t1;
      last_item = static_cast<int>(it);
      last_h = &h;
    } else {
      state = apply_gate(state, std::get<GateEvent>(sched.items[it]));
    }
  }

  // samples at (or within rounding of) the end of the schedule
  while (si < samples.size()) {
    record(state, samples[si], last_item, last_h);
    ++si;
  }

  traj.final_state = std::move(state);
  return traj;
}

Trajectory run(const Schedule& schedule, const DeviceConfig& device, const RunOptions& opts) {
  return run(CompiledProgram(schedule, device), opts);
}

ConservationReport conservation_report(const Trajectory& trajectory) {
  ConservationReport rep;
  double segment_e0 = 0.0;
  int seg_item = -2;
  for (size_t i = 0; i < trajectory.size(); ++i) {
    rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(trajectory.norm[i] - 1.0));
    double qubit_sum = 0.0;
    for (double p : trajectory.p1[i]) qubit_sum += p;
    rep.max_sum_dev = std::max(
        rep.max_sum_dev,
        std::abs(qubit_sum + trajectory.mean_photon[i] - trajectory.excitation[i]));
    if (trajectory.item_index[i] != seg_item) {
      seg_item = trajectory.item_index[i];
      segment_e0 = trajectory.energy[i];
    } else {
      rep.max_energy_dev = std::max(rep.max_energy_dev,
                                    std::abs(trajectory.energy[i] - segment_e0));
    }
  }
  return rep;
}

}  // namespace rads
