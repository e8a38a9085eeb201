#pragma once

#include "algconn/bounds.hpp"
#include "algconn/canonical.hpp"
#include "algconn/constructions.hpp"
#include "algconn/graph.hpp"
#include "algconn/graph6.hpp"
#include "algconn/heuristics.hpp"
#include "algconn/search.hpp"
#include "algconn/spectral.hpp"
#include "algconn/tree_tools.hpp"
