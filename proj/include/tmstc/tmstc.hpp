#pragma once

#include "tmstc/balance.hpp"
#include "tmstc/bench.hpp"
#include "tmstc/brick_tiling.hpp"
#include "tmstc/coverage_path.hpp"
#include "tmstc/dinic.hpp"
#include "tmstc/error.hpp"
#include "tmstc/export.hpp"
#include "tmstc/geometry.hpp"
#include "tmstc/grid_map.hpp"
#include "tmstc/tiling_oracle.hpp"
#include "tmstc/tree_builder.hpp"
#include "tmstc/union_find.hpp"
