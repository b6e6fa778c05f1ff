#pragma once

#include "flagcone/error.hpp"
#include "flagcone/rank_set.hpp"
#include "flagcone/numeric.hpp"
#include "flagcone/intervals.hpp"
#include "flagcone/poset.hpp"
#include "flagcone/algebra.hpp"
#include "flagcone/polyhedra.hpp"
#include "flagcone/cone.hpp"
