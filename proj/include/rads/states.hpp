#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "rads/sector.hpp"

namespace rads {

// Normalized amplitude vector over one excitation sector.
class StateVector {
 public:
  StateVector(SectorSpace space, Eigen::VectorXcd amplitudes, double norm_tol = 1e-12);

  const SectorSpace& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  std::complex<double> amplitude(const BasisConfig& config) const;
  double norm() const { return amp_.norm(); }

  double qubit_p1(int qubit) const;
  double photon_p(int n) const;
  double mean_photon() const;

 private:
  SectorSpace space_;
  Eigen::VectorXcd amp_;
};

// |B_N>: equal amplitudes 1/sqrt(N) over the single-excitation qubit configs.
StateVector bright_state(int n_qubits, int n_max = 2);

// |D_N^m>: amplitude exp(-i m phi_j)/sqrt(N) on qubit j excited,
// phi_j = j*2pi/N with j = 1..N.  m = 0 and m = N reproduce the bright
// state's phase pattern and are rejected.
StateVector dark_state(int n_qubits, int m, int n_max = 2);

// The 4-qubit two-excitation singlet product: amplitudes (+1/2, -1/2, +1/2,
// -1/2) on {1100, 0110, 0011, 1001}, annihilated by both collective ladder
// operators.
StateVector singlet4(int n_max = 3);

// Product basis state: the listed qubits excited (0-based, distinct), the
// resonator in Fock state |photons>.
StateVector product_basis_state(int n_qubits, const std::vector<int>& excited_qubits, int photons,
                                int n_max);

// Multiplies each amplitude by exp(i sum_j theta_j bit_j).
StateVector apply_phase_gates(const StateVector& state, const std::vector<double>& thetas);

// |<a|b>|^2; spaces must have identical shape.
double fidelity(const StateVector& a, const StateVector& b);

// Embeds into a space with `count` extra ground-state qubits in front
// (indices shift up by count); photon cutoff is preserved.
StateVector prepend_ground_qubits(const StateVector& state, int count);

// Relabels the basis so qubit `qubit` reads 0 <-> 1, moving the state one
// sector up or down.  Legal only while the state is one-sided on that qubit:
// the amplitude weight on the minority bit value must stay below
// residual_tol in norm.  This is how an instantaneous pi rotation acts on a
// product factor.
StateVector flip_qubit(const StateVector& state, int qubit, double residual_tol = 1e-9);

// Tensors |count> onto the resonator: every config's photon number shifts up
// by count (must stay within the cutoff).
StateVector add_photons(const StateVector& state, int count);

// Collective ladder operators J+/- = sum_k sigma_k^{+/-}.  The image lives in
// the neighbouring sector and is generally unnormalized, so it is returned
// as a raw vector with its space.
std::pair<SectorSpace, Eigen::VectorXcd> collective_raise(const StateVector& state);
std::pair<SectorSpace, Eigen::VectorXcd> collective_lower(const StateVector& state);

// Ideal sqrt(iSWAP) on the two-qubit basis {00,01,10,11}; a quarter-period
// flip-flop evolution, the entangler behind the singlet preparation.
Eigen::Matrix4cd sqrt_iswap();

// Text round-trip, one "index real imag" line per nonzero amplitude.
std::string to_text(const StateVector& state);
StateVector state_from_text(const SectorSpace& space, const std::string& text);

}  // namespace rads
