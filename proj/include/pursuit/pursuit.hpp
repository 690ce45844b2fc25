#pragma once

// Umbrella header: the full simulation and analysis toolkit.

#include "pursuit/bounds.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/error.hpp"
#include "pursuit/experiment.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/io.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sample.hpp"
#include "pursuit/state.hpp"
#include "pursuit/strategy.hpp"
#include "pursuit/vec.hpp"
