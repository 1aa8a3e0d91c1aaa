#pragma once

#include <ostream>

#include "rads/evolve.hpp"

namespace rads::cli {

// Header t_ns,p1_q1,...,p1_qN,photon_p1,photon_mean; 12 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace rads::cli
