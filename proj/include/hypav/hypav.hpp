#pragma once

#include "hypav/error.hpp"
#include "hypav/rational.hpp"
#include "hypav/random.hpp"
#include "hypav/parallel.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/matrix_core.hpp"
#include "hypav/hypergraph.hpp"
#include "hypav/avoidance.hpp"
#include "hypav/contraction.hpp"
#include "hypav/supersat.hpp"
#include "hypav/containers_view.hpp"
#include "hypav/serialize.hpp"
