#include "rads/sector.hpp"

#include <algorithm>
#include <numeric>

#include "rads/error.hpp"

namespace rads {

int BasisConfig::excitation() const {
  int k = photons;
  for (auto b : qubit_bits) k += b;
  return k;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t acc = 1;
  for (int i = 1; i <= r; ++i) acc = acc * static_cast<std::uint64_t>(n - r + i) / i;
  return acc;
}

std::uint64_t SectorSpace::key_of(const BasisConfig& cfg) const {
  std::uint64_t mask = 0;
  for (int q = 0; q < n_qubits_; ++q)
    if (cfg.qubit_bits[q]) mask |= (std::uint64_t{1} << q);
  return mask | (static_cast<std::uint64_t>(cfg.photons) << n_qubits_);
}

namespace {

// Appends every n-qubit pattern with `count` excited qubits, walking the
// excited-index combinations in lexicographic order.
void append_patterns(int n, int count, int photons, std::vector<BasisConfig>& out) {
  std::vector<int> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    BasisConfig cfg;
    cfg.qubit_bits.assign(n, 0);
    for (int i : idx) cfg.qubit_bits[i] = 1;
    cfg.photons = photons;
    out.push_back(std::move(cfg));
    if (count == 0) return;
    // next combination
    int pos = count - 1;
    while (pos >= 0 && idx[pos] == n - count + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < count; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

SectorSpace SectorSpace::enumerate(int n_qubits, int k, int n_max) {
  if (n_qubits < 1) throw Error("enumerate_sector: n_qubits must be >= 1, got " + std::to_string(n_qubits));
  if (n_max < 0) throw Error("enumerate_sector: photon cutoff must be >= 0, got " + std::to_string(n_max));
  if (k < 0 || k > n_qubits + n_max)
    throw Error("enumerate_sector: total excitation k=" + std::to_string(k) +
                " outside [0, " + std::to_string(n_qubits + n_max) + "]");

  SectorSpace s;
  s.n_qubits_ = n_qubits;
  s.k_ = k;
  s.n_max_ = n_max;
  for (int p = std::min(k, n_max); p >= 0; --p) {
    const int excited = k - p;
    if (excited > n_qubits) continue;
    append_patterns(n_qubits, excited, p, s.basis_);
  }
  s.index_.reserve(s.basis_.size());
  for (int i = 0; i < static_cast<int>(s.basis_.size()); ++i)
    s.index_.emplace(s.key_of(s.basis_[i]), i);
  return s;
}

const BasisConfig& SectorSpace::config(int index) const {
  if (index < 0 || index >= dimension())
    throw Error("SectorSpace: index " + std::to_string(index) + " out of range");
  return basis_[index];
}

int SectorSpace::find(const BasisConfig& cfg) const {
  if (static_cast<int>(cfg.qubit_bits.size()) != n_qubits_) return -1;
  if (cfg.photons < 0 || cfg.photons > n_max_) return -1;
  auto it = index_.find(key_of(cfg));
  return it == index_.end() ? -1 : it->second;
}

int SectorSpace::index_of(const BasisConfig& cfg) const {
  const int i = find(cfg);
  if (i < 0) throw Error("SectorSpace: config does not belong to this sector");
  return i;
}

}  // namespace rads
