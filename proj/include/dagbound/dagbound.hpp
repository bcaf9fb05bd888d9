#pragma once

// Response-time bounds for DAG tasks on identical multi-cores under
// work-conserving scheduling: task model, the chain-packing flow reduction,
// multi-path bounds, a scheduling simulator, random generators and the
// experiment harness.

#include "bounds.hpp"
#include "experiment.hpp"
#include "flow.hpp"
#include "gen.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "task.hpp"
#include "task_io.hpp"
