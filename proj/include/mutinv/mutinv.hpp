#pragma once

#include "mutinv/canonical.hpp"
#include "mutinv/config.hpp"
#include "mutinv/determinant.hpp"
#include "mutinv/distinguish.hpp"
#include "mutinv/errors.hpp"
#include "mutinv/evidence.hpp"
#include "mutinv/exchange.hpp"
#include "mutinv/expansion.hpp"
#include "mutinv/explore.hpp"
#include "mutinv/int_types.hpp"
#include "mutinv/invariants.hpp"
#include "mutinv/io.hpp"
#include "mutinv/matrix.hpp"
#include "mutinv/mutation.hpp"
#include "mutinv/permutation.hpp"
#include "mutinv/symmetrization.hpp"
