#pragma once

#include "sizegen/cost.hpp"
#include "sizegen/datagen.hpp"
#include "sizegen/estimators.hpp"
#include "sizegen/graph.hpp"
#include "sizegen/greedy.hpp"
#include "sizegen/gw.hpp"
#include "sizegen/instance.hpp"
#include "sizegen/io.hpp"
#include "sizegen/random.hpp"
#include "sizegen/sdp.hpp"
#include "sizegen/seeding.hpp"
#include "sizegen/selection.hpp"
#include "sizegen/single_linkage.hpp"
#include "sizegen/stability.hpp"
#include "sizegen/subsample.hpp"
