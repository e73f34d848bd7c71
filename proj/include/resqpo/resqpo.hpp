#pragma once

#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/morphism.hpp"
#include "resqpo/matching.hpp"
#include "resqpo/cat_ops.hpp"
#include "resqpo/constraints.hpp"
#include "resqpo/search.hpp"
#include "resqpo/overlaps.hpp"
#include "resqpo/rules.hpp"
#include "resqpo/census.hpp"
#include "resqpo/io.hpp"
#include "resqpo/bench.hpp"
