#pragma once

#include "chernsim/linalg.hpp"
#include "chernsim/spin_models.hpp"
#include "chernsim/sweep_dynamics.hpp"
#include "chernsim/topology.hpp"
#include "chernsim/phase_map.hpp"
#include "chernsim/exporters.hpp"
#include "chernsim/version.hpp"
