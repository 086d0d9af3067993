#include "ffqaoa/coupling.hpp"

#include <fmt/format.h>

#include "ffqaoa/errors.hpp"

namespace ffqaoa {

void CouplingConfig::validate() const {
  if (n_sites < 2) {
    throw config_error(fmt::format("CouplingConfig: need N >= 2, got {}", n_sites));
  }
  if (static_cast<int>(couplings.size()) != n_sites) {
    throw config_error(fmt::format("CouplingConfig: {} couplings for N = {}",
                                   couplings.size(), n_sites));
  }
}

}
