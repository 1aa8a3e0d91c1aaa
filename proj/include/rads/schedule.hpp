#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "rads/device.hpp"

namespace rads {

// ---------------------------------------------------------------------------
// gate events (instantaneous, applied at segment boundaries)

struct PiPulse {
  int qubit = 0;
  bool operator==(const PiPulse&) const = default;
};

struct PhaseGate {
  int qubit = 0;
  double theta = 0.0;  // rad; multiplies the |1> amplitude by exp(i theta)
  bool operator==(const PhaseGate&) const = default;
};

// Arbitrary excitation-conserving unitary on one or two qubits.  Not
// expressible in the schedule text format; API-level use only.
struct CustomGate {
  std::vector<int> qubits;  // 1 or 2 distinct indices; basis order |q0 q1>, q0 least significant
  Eigen::MatrixXcd unitary;
  bool operator==(const CustomGate& o) const {
    return qubits == o.qubits && unitary.rows() == o.unitary.rows() &&
           unitary.cols() == o.unitary.cols() && (unitary - o.unitary).norm() == 0.0;
  }
};

using GateEvent = std::variant<PiPulse, PhaseGate, CustomGate>;

struct Segment {
  double duration_ns = 0.0;
  std::vector<QubitSetting> settings;  // one per qubit
  bool operator==(const Segment&) const = default;
};

using ScheduleItem = std::variant<GateEvent, Segment>;

// ---------------------------------------------------------------------------
// initial state and sampling

struct InitialState {
  enum class Named { None, Singlet4 };
  std::vector<int> excited_qubits;  // 0-based, distinct
  int photons = 0;                  // resonator Fock number
  Named named = Named::None;
  bool operator==(const InitialState&) const = default;
};

struct SampleRange {
  double start_ns = 0.0, stop_ns = 0.0, step_ns = 0.0;
  bool operator==(const SampleRange&) const = default;
};
struct SampleList {
  std::vector<double> times_ns;
  bool operator==(const SampleList&) const = default;
};
using SampleSpec = std::variant<SampleRange, SampleList>;

struct Schedule {
  int n_qubits = 0;
  InitialState init;
  std::vector<ScheduleItem> items;
  std::vector<SampleSpec> samples;

  double total_duration_ns() const;
  // Expanded sample times in ascending order.  Range expansion is pinned:
  // t_k = start + k*step for k = 0..floor((stop-start)/step + 1e-9).
  std::vector<double> sample_times() const;
  bool operator==(const Schedule&) const = default;
};

// ---------------------------------------------------------------------------
// protocol builders
//
// All timed protocols use qubit 0 as the ancilla feeding the resonator and
// qubits 1..N as the register, so the register index doubles as the phase
// index j in phi_j = j*2pi/N.

struct ProtocolParams {
  double g_mhz = 13.5;         // nominal coupling fixing the gate durations
  double probe_ns = 100.0;     // resonant probe window length
  double sample_step_ns = 0.5;
};

// Quarter vacuum-Rabi period 1/(4g) and its collective sqrt(N) speedup.
double iswap_duration_ns(double g_mhz);
double collective_duration_ns(double g_mhz, int n);

// pi on ancilla -> ancilla iSWAP into the resonator -> collective quarter
// period over the register -> per-qubit phase gates (all zero here) ->
// resonant probe with sampling.
Schedule superradiance_protocol(int n, const ProtocolParams& params = {});

// Same sequence with phase gates theta_j = -m*phi_j, distributing the
// excitation into the m-th spin wave.
Schedule subradiance_protocol(int n, int m, const ProtocolParams& params = {});

// Subradiant preparation, a resonant storage window of t_store, then phase
// gates theta_j = +phi_j fold the spin wave back onto the symmetric state;
// sampling spans storage and probe.
Schedule switch_protocol(int n, double t_store_ns, const ProtocolParams& params = {});

// Subradiant preparation followed by a second ancilla pi + iSWAP that leaves
// one photon on top of the spin wave; the probe then runs in the
// two-excitation sector.
Schedule absorb_protocol(int n, const ProtocolParams& params = {});

// Four-qubit singlet product state, optionally with one resonator photon,
// held under a resonant probe.
Schedule singlet_protocol(int resonator_photon, const ProtocolParams& params = {});

// ---------------------------------------------------------------------------
// text round-trip

// Canonical text form; parse_schedule(render(s)) == s.  Rejects schedules
// holding CustomGate events (no text syntax for a matrix).
std::string render(const Schedule& schedule);

// Parses the line-oriented schedule format; failures throw ParseError with
// 1-based line and column.
Schedule parse_schedule(const std::string& text);

}  // namespace rads
