#pragma once

// Umbrella header: the full public surface.

#include "tvtv/diff.hpp"
#include "tvtv/errors.hpp"
#include "tvtv/fft.hpp"
#include "tvtv/image.hpp"
#include "tvtv/io.hpp"
#include "tvtv/metrics.hpp"
#include "tvtv/operators.hpp"
#include "tvtv/parallel.hpp"
#include "tvtv/phantom.hpp"
#include "tvtv/rng.hpp"
#include "tvtv/solver.hpp"
#include "tvtv/version.hpp"
