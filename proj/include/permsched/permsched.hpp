#pragma once

#include "permsched/lp/linear_program.hpp"
#include "permsched/lp/simplex.hpp"
#include "permsched/model/chain_transform.hpp"
#include "permsched/model/permutahedron.hpp"
#include "permsched/model/permutation.hpp"
#include "permsched/subproblems/emit.hpp"
#include "permsched/subproblems/instance.hpp"
#include "permsched/subproblems/oracles.hpp"
#include "permsched/scheduler/master_lp.hpp"
#include "permsched/scheduler/schedule.hpp"
#include "permsched/scheduler/solve.hpp"
#include "permsched/baselines/brute_force.hpp"
#include "permsched/baselines/greedy.hpp"
#include "permsched/baselines/submodular.hpp"
#include "permsched/io/bundled.hpp"
#include "permsched/io/instance_json.hpp"
#include "permsched/io/report.hpp"
