#pragma once

#include <iosfwd>
#include <string>

#include "hmmaro/model.hpp"

namespace hmmaro {

// Plain-text key/value model format, one key per line:
//
//   hmm-model 1
//   kind discrete            | kind gaussian_mixture
//   states N
//   symbols K                | components M / dimension d
//   initial p_1 ... p_N
//   transition a_i1 ... a_iN     (N lines, row order)
//   emission b_j1 ... b_jK       (discrete, N lines)
//   weights c_j1 ... c_jM        (mixture, N lines)
//   mean j k mu_1 ... mu_d       (mixture, N*M lines)
//   variance j k u_1 ... u_d     (mixture, N*M lines)
//
// Numbers are written with 17 significant digits so reading back is exact.
// Lines starting with '#' are ignored.

void write_model(std::ostream& out, const HmmModel& model);
HmmModel read_model(std::istream& in);

void save_model(const std::string& path, const HmmModel& model);
HmmModel load_model(const std::string& path);

}  // namespace hmmaro
