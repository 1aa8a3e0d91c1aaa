#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace rads {

// One basis ket |b_1 b_2 ... b_N> (x) |n photons>.
struct BasisConfig {
  std::vector<std::uint8_t> qubit_bits;  // 0/1 per qubit
  int photons = 0;

  int excitation() const;
  bool operator==(const BasisConfig&) const = default;
};

// Fixed-total-excitation subspace of N qubits plus one photon mode with
// cutoff n_max. The interaction conserves a†a + Σσ+σ-, so dynamics never
// leaves a sector and dense per-sector matrices stay tiny.
//
// Basis ordering contract (indices must be reproducible across runs):
// descending photon number; within a photon block, qubit patterns in
// lexicographic order of their excited-index combinations, i.e. for k=1
// the qubit-0-excited config precedes qubit-1-excited, and so on.
class SectorSpace {
 public:
  SectorSpace() = default;

  // enumerate_sector: builds the full deterministic basis.
  // Requires n_qubits >= 1, n_max >= 0, 0 <= k <= n_qubits + n_max.
  static SectorSpace enumerate(int n_qubits, int k, int n_max);

  int n_qubits() const { return n_qubits_; }
  int total_excitation() const { return k_; }
  int photon_cutoff() const { return n_max_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

  const BasisConfig& config(int index) const;
  const std::vector<BasisConfig>& basis() const { return basis_; }

  // Index of a config in this sector; throws if it does not belong.
  int index_of(const BasisConfig& cfg) const;
  // Like index_of but returns -1 instead of throwing.
  int find(const BasisConfig& cfg) const;

  // True when two spaces index the same basis.
  bool same_shape(const SectorSpace& other) const {
    return n_qubits_ == other.n_qubits_ && k_ == other.k_ &&
           n_max_ == other.n_max_;
  }

 private:
  std::uint64_t key_of(const BasisConfig& cfg) const;

  int n_qubits_ = 0;
  int k_ = 0;
  int n_max_ = 0;
  std::vector<BasisConfig> basis_;
  std::unordered_map<std::uint64_t, int> index_;
};

// Binomial coefficient, exact for the small arguments used here.
std::uint64_t binomial(int n, int r);

}  // namespace rads
