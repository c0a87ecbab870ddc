#pragma once

// Everything except the command-line layer (eqdef/cli.hpp), which also needs
// the vendored JSON header.

#include "eqdef/scalar.hpp"
#include "eqdef/polynomial.hpp"
#include "eqdef/parse.hpp"
#include "eqdef/linalg.hpp"
#include "eqdef/groebner.hpp"
#include "eqdef/gaction.hpp"
#include "eqdef/cohomology.hpp"
#include "eqdef/ambient.hpp"
#include "eqdef/deform.hpp"
#include "eqdef/problem.hpp"
#include "eqdef/ramify.hpp"
