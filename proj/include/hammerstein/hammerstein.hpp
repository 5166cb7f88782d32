#pragma once

/// Umbrella include for the whole library: duality-map spaces, Lyapunov
/// functionals, operator kinds and monotonicity estimation, schedules, the
/// coupled anchored iteration, and the pendulum Green-function pipeline.

#include "hammerstein/cli.hpp"
#include "hammerstein/errors.hpp"
#include "hammerstein/functionals.hpp"
#include "hammerstein/operators.hpp"
#include "hammerstein/pendulum.hpp"
#include "hammerstein/schedule.hpp"
#include "hammerstein/serialization.hpp"
#include "hammerstein/solver.hpp"
#include "hammerstein/spaces.hpp"
