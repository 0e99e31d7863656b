#pragma once

// Umbrella header: random-walk rank computation on undirected and bipartite
// graphs, network-capacity bounds for rank outflow, zone-network benchmark
// generators, and independent verification oracles.

#include "rankcap/bipartite.hpp"
#include "rankcap/bounds.hpp"
#include "rankcap/engine.hpp"
#include "rankcap/experiment.hpp"
#include "rankcap/graph.hpp"
#include "rankcap/io.hpp"
#include "rankcap/netgen.hpp"
#include "rankcap/oracle.hpp"
#include "rankcap/teleport.hpp"
