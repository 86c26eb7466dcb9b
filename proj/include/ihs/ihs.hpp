#pragma once

// Adaptive sketch-size iterative Hessian sketching for L2-regularized
// least squares: umbrella header.

#include "ihs/baselines.hpp"
#include "ihs/bench.hpp"
#include "ihs/concentration.hpp"
#include "ihs/datasets.hpp"
#include "ihs/dual.hpp"
#include "ihs/errors.hpp"
#include "ihs/problem.hpp"
#include "ihs/rng.hpp"
#include "ihs/sketch.hpp"
#include "ihs/sketched_system.hpp"
#include "ihs/solver.hpp"
#include "ihs/spectral.hpp"
#include "ihs/tuning.hpp"
#include "ihs/types.hpp"
