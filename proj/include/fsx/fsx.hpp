#pragma once

#include "fsx/admissibility.hpp"
#include "fsx/corpus.hpp"
#include "fsx/differences.hpp"
#include "fsx/errors.hpp"
#include "fsx/grid_io.hpp"
#include "fsx/harness.hpp"
#include "fsx/json_io.hpp"
#include "fsx/lattice.hpp"
#include "fsx/quasinorms.hpp"
#include "fsx/rational.hpp"
#include "fsx/regression.hpp"
#include "fsx/spectral.hpp"
