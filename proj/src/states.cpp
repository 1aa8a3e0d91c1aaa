#include "rads/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rads/error.hpp"

namespace rads {

using namespace std::complex_literals;

namespace {

std::string shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// norm-preserving transforms carry the input's deviation through instead of
// re-judging it (integrator states arrive with up to ~1e-7 drift)
double carried_tol(const StateVector& s, double extra = 0.0) {
  return std::max(1e-12, 2.0 * std::abs(s.norm() - 1.0)) + extra;
}

}  // namespace

StateVector::StateVector(SectorSpace space, Eigen::VectorXcd amplitudes, double norm_tol)
    : space_(std::move(space)), amp_(std::move(amplitudes)) {
  if (amp_.size() != space_.dimension())
    throw Error("state: " + std::to_string(amp_.size()) + " amplitudes for dimension " +
                std::to_string(space_.dimension()));
  const double n = amp_.norm();
  if (std::abs(n - 1.0) > norm_tol)
    throw Error("state: norm " + shortest(n) + " deviates from 1 beyond " + shortest(norm_tol));
}

std::complex<double> StateVector::amplitude(const BasisConfig& config) const {
  const int i = space_.find(config);
  return i < 0 ? 0.0 : amp_(i);
}

double StateVector::qubit_p1(int qubit) const {
  if (qubit < 0 || qubit >= space_.n_qubits())
    throw Error("qubit_p1: qubit " + std::to_string(qubit) + " out of range");
  double p = 0.0;
  for (int i = 0; i < space_.dimension(); ++i)
    if (space_.config(i).qubit_bits[qubit]) p += std::norm(amp_(i));
  return p;
}

double StateVector::photon_p(int n) const {
  double p = 0.0;
  for (int i = 0; i < space_.dimension(); ++i)
    if (space_.config(i).photons == n) p += std::norm(amp_(i));
  return p;
}

double StateVector::mean_photon() const {
  double p = 0.0;
  for (int i = 0; i < space_.dimension(); ++i) p += space_.config(i).photons * std::norm(amp_(i));
  return p;
}

StateVector bright_state(int n_qubits, int n_max) {
  if (n_qubits < 1) throw Error("bright_state: need at least one qubit");
  SectorSpace space = SectorSpace::enumerate(n_qubits, 1, n_max);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(space.dimension());
  const double a = 1.0 / std::sqrt(static_cast<double>(n_qubits));
  for (int j = 0; j < n_qubits; ++j) {
    BasisConfig c{std::vector<std::uint8_t>(n_qubits, 0), 0};
    c.qubit_bits[j] = 1;
    amp(space.index_of(c)) = a;
  }
  return StateVector(std::move(space), std::move(amp));
}

StateVector dark_state(int n_qubits, int m, int n_max) {
  if (n_qubits < 2) throw Error("dark_state: need at least two qubits");
  if (m < 1 || m > n_qubits - 1)
    throw Error("dark_state: m = " + std::to_string(m) + " outside 1.." +
                std::to_string(n_qubits - 1) +
                " (m = 0 and m = N give the bright phase pattern)");
  SectorSpace space = SectorSpace::enumerate(n_qubits, 1, n_max);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(space.dimension());
  const double a = 1.0 / std::sqrt(static_cast<double>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    // phase index j = q+1 runs 1..N
    const double phi = (q + 1) * 2.0 * std::numbers::pi / n_qubits;
    BasisConfig c{std::vector<std::uint8_t>(n_qubits, 0), 0};
    c.qubit_bits[q] = 1;
    amp(space.index_of(c)) = a * std::exp(-1.0i * (m * phi));
  }
  return StateVector(std::move(space), std::move(amp));
}

StateVector singlet4(int n_max) {
  SectorSpace space = SectorSpace::enumerate(4, 2, n_max);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(space.dimension());
  const auto put = [&](std::uint8_t b0, std::uint8_t b1, std::uint8_t b2, std::uint8_t b3,
                       double v) { amp(space.index_of(BasisConfig{{b0, b1, b2, b3}, 0})) = v; };
  put(1, 1, 0, 0, 0.5);
  put(0, 1, 1, 0, -0.5);
  put(0, 0, 1, 1, 0.5);
  put(1, 0, 0, 1, -0.5);
  return StateVector(std::move(space), std::move(amp));
}

StateVector product_basis_state(int n_qubits, const std::vector<int>& excited_qubits, int photons,
                                int n_max) {
  BasisConfig c{std::vector<std::uint8_t>(n_qubits, 0), photons};
  for (int q : excited_qubits) {
    if (q < 0 || q >= n_qubits)
      throw Error("product state: qubit " + std::to_string(q) + " out of range");
    if (c.qubit_bits[q]) throw Error("product state: qubit " + std::to_string(q) + " listed twice");
    c.qubit_bits[q] = 1;
  }
  SectorSpace space = SectorSpace::enumerate(n_qubits, c.excitation(), n_max);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(space.dimension());
  amp(space.index_of(c)) = 1.0;
  return StateVector(std::move(space), std::move(amp));
}

StateVector apply_phase_gates(const StateVector& state, const std::vector<double>& thetas) {
  const SectorSpace& space = state.space();
  if (static_cast<int>(thetas.size()) != space.n_qubits())
    throw Error("phase gates: " + std::to_string(thetas.size()) + " angles for " +
                std::to_string(space.n_qubits()) + " qubits");
  Eigen::VectorXcd amp = state.amplitudes();
  for (int i = 0; i < space.dimension(); ++i) {
    double phase = 0.0;
    const BasisConfig& c = space.config(i);
    for (int j = 0; j < space.n_qubits(); ++j)
      if (c.qubit_bits[j]) phase += thetas[j];
    amp(i) *= std::exp(1.0i * phase);
  }
  return StateVector(space, std::move(amp), carried_tol(state));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!a.space().same_shape(b.space())) throw Error("fidelity: sector shapes differ");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

StateVector prepend_ground_qubits(const StateVector& state, int count) {
  if (count < 0) throw Error("prepend_ground_qubits: negative count");
  if (count == 0) return state;
  const SectorSpace& small = state.space();
  SectorSpace big = SectorSpace::enumerate(small.n_qubits() + count, small.total_excitation(),
                                           small.photon_cutoff());
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(big.dimension());
  for (int i = 0; i < small.dimension(); ++i) {
    const BasisConfig& c = small.config(i);
    BasisConfig t{std::vector<std::uint8_t>(count, 0), c.photons};
    t.qubit_bits.insert(t.qubit_bits.end(), c.qubit_bits.begin(), c.qubit_bits.end());
    amp(big.index_of(t)) = state.amplitudes()(i);
  }
  return StateVector(std::move(big), std::move(amp), carried_tol(state));
}

StateVector flip_qubit(const StateVector& state, int qubit, double residual_tol) {
  const SectorSpace& space = state.space();
  const int n = space.n_qubits();
  if (qubit < 0 || qubit >= n) throw Error("flip_qubit: qubit " + std::to_string(qubit) + " out of range");
  double w1 = 0.0;
  for (int i = 0; i < space.dimension(); ++i)
    if (space.config(i).qubit_bits[qubit]) w1 += std::norm(state.amplitudes()(i));
  const double minority = std::sqrt(std::min(w1, std::max(0.0, 1.0 - w1)));
  if (minority > residual_tol)
    throw Error("flip_qubit: qubit " + std::to_string(qubit) +
                " is entangled with the rest of the register (residual " + shortest(minority) +
                "), a pi rotation is only defined on a product factor");
  const int majority_bit = w1 > 0.5 ? 1 : 0;
  const int dk = majority_bit ? -1 : +1;
  SectorSpace image = SectorSpace::enumerate(n, space.total_excitation() + dk,
                                             space.photon_cutoff());
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(image.dimension());
  for (int i = 0; i < space.dimension(); ++i) {
    const BasisConfig& c = space.config(i);
    if (c.qubit_bits[qubit] != majority_bit) continue;  // residual weight is dropped
    BasisConfig t = c;
    t.qubit_bits[qubit] ^= 1;
    amp(image.index_of(t)) = state.amplitudes()(i);
  }
  // the dropped residual lowers the norm on top of whatever drift came in
  return StateVector(std::move(image), std::move(amp),
                     carried_tol(state, 2.0 * std::max(residual_tol, 1e-9)));
}

StateVector add_photons(const StateVector& state, int count) {
  if (count < 0) throw Error("add_photons: negative count");
  if (count == 0) return state;
  const SectorSpace& space = state.space();
  SectorSpace image = SectorSpace::enumerate(space.n_qubits(), space.total_excitation() + count,
                                             space.photon_cutoff());
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(image.dimension());
  for (int i = 0; i < space.dimension(); ++i) {
    const std::complex<double> a = state.amplitudes()(i);
    if (a == 0.0) continue;
    BasisConfig t = space.config(i);
    t.photons += count;
    if (t.photons > space.photon_cutoff())
      throw Error("add_photons: photon number exceeds cutoff " +
                  std::to_string(space.photon_cutoff()));
    amp(image.index_of(t)) = a;
  }
  return StateVector(std::move(image), std::move(amp), carried_tol(state));
}

namespace {

std::pair<SectorSpace, Eigen::VectorXcd> collective_ladder(const StateVector& state, int dir) {
  const SectorSpace& space = state.space();
  const int n = space.n_qubits();
  SectorSpace image = SectorSpace::enumerate(n, space.total_excitation() + dir,
                                             space.photon_cutoff());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(image.dimension());
  for (int i = 0; i < space.dimension(); ++i) {
    const std::complex<double> a = state.amplitudes()(i);
    if (a == 0.0) continue;
    const BasisConfig& c = space.config(i);
    for (int j = 0; j < n; ++j) {
      if (c.qubit_bits[j] != (dir > 0 ? 0 : 1)) continue;
      BasisConfig t = c;
      t.qubit_bits[j] ^= 1;
      out(image.index_of(t)) += a;
    }
  }
  return {std::move(image), std::move(out)};
}

}  // namespace

std::pair<SectorSpace, Eigen::VectorXcd> collective_raise(const StateVector& state) {
  return collective_ladder(state, +1);
}

std::pair<SectorSpace, Eigen::VectorXcd> collective_lower(const StateVector& state) {
  return collective_ladder(state, -1);
}

Eigen::Matrix4cd sqrt_iswap() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(1, 1) = r;
  u(1, 2) = -1.0i * r;
  u(2, 1) = -1.0i * r;
  u(2, 2) = r;
  return u;
}

std::string to_text(const StateVector& state) {
  std::ostringstream os;
  for (int i = 0; i < state.space().dimension(); ++i) {
    const std::complex<double> a = state.amplitudes()(i);
    if (a == 0.0) continue;
    os << i << ' ' << shortest(a.real()) << ' ' << shortest(a.imag()) << '\n';
  }
  return os.str();
}

StateVector state_from_text(const SectorSpace& space, const std::string& text) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(space.dimension());
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long idx = -1;
    double re = 0, im = 0;
    if (!(ls >> idx >> re >> im))
      throw Error("state text line " + std::to_string(lineno) + ": expected 'index real imag'");
    if (idx < 0 || idx >= space.dimension())
      throw Error("state text line " + std::to_string(lineno) + ": index " + std::to_string(idx) +
                  " out of range");
    amp(idx) = std::complex<double>(re, im);
  }
  return StateVector(space, std::move(amp));
}

}  // namespace rads
