#pragma once

#include "secucost/aggregation.hpp"
#include "secucost/commands.hpp"
#include "secucost/config.hpp"
#include "secucost/cost_model.hpp"
#include "secucost/local_cloud.hpp"
#include "secucost/metric_engine.hpp"
#include "secucost/normalisation.hpp"
#include "secucost/report.hpp"
#include "secucost/rng.hpp"
#include "secucost/simulation.hpp"
#include "secucost/trace_io.hpp"
#include "secucost/types.hpp"
