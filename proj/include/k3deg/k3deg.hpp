#pragma once

// Umbrella header. Users should generally include only this file.

#include <k3deg/arith.hpp>
#include <k3deg/matrix.hpp>
#include <k3deg/lattice.hpp>
#include <k3deg/roots.hpp>
#include <k3deg/homology.hpp>
#include <k3deg/toric.hpp>
#include <k3deg/kulikov.hpp>
#include <k3deg/glue_period.hpp>
#include <k3deg/cusps.hpp>
#include <k3deg/yau_zaslow.hpp>
#include <k3deg/small_cones.hpp>
#include <k3deg/json_io.hpp>
