#pragma once

// Umbrella header.
#include "gentile/eigensolve.hpp"
#include "gentile/errors.hpp"
#include "gentile/expr.hpp"
#include "gentile/fock_basis.hpp"
#include "gentile/heisenberg.hpp"
#include "gentile/ladder.hpp"
#include "gentile/operators.hpp"
#include "gentile/partitions.hpp"
#include "gentile/scalars.hpp"
#include "gentile/sparse_operator.hpp"
#include "gentile/verifier.hpp"
#include "gentile/version.hpp"
