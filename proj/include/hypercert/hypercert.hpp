#pragma once

// Umbrella header: hyperbolic certificates of polynomial nonnegativity,
// dimension-count gates, and the 16-variable quaternionic quartic suite.

#include "hypercert/rational.hpp"
#include "hypercert/rng.hpp"
#include "hypercert/prime_field.hpp"
#include "hypercert/univariate.hpp"
#include "hypercert/homogeneous.hpp"
#include "hypercert/polymap.hpp"
#include "hypercert/quadratic.hpp"
#include "hypercert/exact_matrix.hpp"
#include "hypercert/hyperbolic.hpp"
#include "hypercert/bezoutian.hpp"
#include "hypercert/wronskian.hpp"
#include "hypercert/dimension_gate.hpp"
#include "hypercert/quaternion.hpp"
#include "hypercert/quartic_example.hpp"
#include "hypercert/io.hpp"
