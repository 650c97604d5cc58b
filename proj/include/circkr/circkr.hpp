#pragma once

#include "circkr/decomposition.hpp"
#include "circkr/dense_matrix.hpp"
#include "circkr/error.hpp"
#include "circkr/factors.hpp"
#include "circkr/inverse.hpp"
#include "circkr/recurrence.hpp"
#include "circkr/scalar.hpp"
#include "circkr/solver.hpp"
#include "circkr/system_spec.hpp"
