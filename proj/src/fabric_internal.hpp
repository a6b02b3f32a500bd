#pragma once

#include "dspfab/fabric.hpp"

namespace dspfab::fabric {

// Netlist builders, one per configuration mode (fabric_netlists.cpp).
Netlist detail_build(ConfigMode mode, const ModeSpec& spec);

}  // namespace dspfab::fabric
