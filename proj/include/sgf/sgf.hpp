#pragma once

#include "connectivity.hpp"
#include "cycle_search.hpp"
#include "cycles.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "flow_certificate.hpp"
#include "graph.hpp"
#include "integer_lift.hpp"
#include "io.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "z3_preflow.hpp"
