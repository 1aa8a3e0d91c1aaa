#include "rads/cli/csvio.hpp"

#include "rads/format.hpp"

namespace rads::cli {

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "t_ns";
  for (int q = 1; q <= trajectory.n_qubits; ++q) os << ",p1_q" << q;
  os << ",photon_p1,photon_mean\n";
  for (size_t i = 0; i < trajectory.size(); ++i) {
    os << format_sig(trajectory.times_ns[i], 12);
    for (int q = 0; q < trajectory.n_qubits; ++q)
      os << ',' << format_sig(trajectory.p1[i][q], 12);
    os << ',' << format_sig(trajectory.photon_p1[i], 12) << ','
       << format_sig(trajectory.mean_photon[i], 12) << '\n';
  }
}

}  // namespace rads::cli
