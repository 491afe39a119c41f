#pragma once

#include "fvweno/boundary.hpp"
#include "fvweno/conversion.hpp"
#include "fvweno/core.hpp"
#include "fvweno/faces.hpp"
#include "fvweno/grid.hpp"
#include "fvweno/harness.hpp"
#include "fvweno/io.hpp"
#include "fvweno/physics.hpp"
#include "fvweno/problems.hpp"
#include "fvweno/solver.hpp"
#include "fvweno/timeint.hpp"
#include "fvweno/weno.hpp"
