#pragma once

// Umbrella header for the logical-consensus toolkit.

#include "analysis.hpp"
#include "bool_expr.hpp"
#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "decision.hpp"
#include "errors.hpp"
#include "parse.hpp"
#include "reachability.hpp"
#include "rules_io.hpp"
#include "scenario.hpp"
#include "simulator.hpp"
#include "synth_linear.hpp"
#include "synth_robust.hpp"
