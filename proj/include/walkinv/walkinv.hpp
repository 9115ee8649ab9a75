#pragma once

#include "graph.hpp"
#include "invariants.hpp"
#include "charpoly.hpp"
#include "reconstruct.hpp"
#include "isomatch.hpp"
#include "serialize.hpp"
