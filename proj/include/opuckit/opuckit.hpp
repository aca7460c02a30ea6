#pragma once

// Numerical toolkit for Schur functions, Caratheodory functions and
// probability measures on the unit circle: the bijections between the three,
// Szego functions, orthogonal polynomials with their canonical completion,
// the associated unitary colligation, and two numerical pseudocontinuability
// indicators for rational and sampled data.

#include "opuckit/colligation.hpp"
#include "opuckit/common.hpp"
#include "opuckit/grid.hpp"
#include "opuckit/measure.hpp"
#include "opuckit/opuc.hpp"
#include "opuckit/pcont.hpp"
#include "opuckit/poly.hpp"
#include "opuckit/rational.hpp"
#include "opuckit/series.hpp"
#include "opuckit/triples.hpp"
