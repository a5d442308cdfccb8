#pragma once

#include "sarplan/cli.hpp"
#include "sarplan/config.hpp"
#include "sarplan/energy.hpp"
#include "sarplan/error.hpp"
#include "sarplan/exact.hpp"
#include "sarplan/heuristic.hpp"
#include "sarplan/io.hpp"
#include "sarplan/oracle.hpp"
#include "sarplan/planner.hpp"
#include "sarplan/plot.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/simulator.hpp"
#include "sarplan/solution.hpp"
#include "sarplan/terrain.hpp"
#include "sarplan/util.hpp"
#include "sarplan/validate.hpp"
