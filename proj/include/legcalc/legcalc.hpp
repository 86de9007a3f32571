#pragma once

#include "legcalc/cli.hpp"
#include "legcalc/errors.hpp"
#include "legcalc/front.hpp"
#include "legcalc/geom.hpp"
#include "legcalc/invariants.hpp"
#include "legcalc/io.hpp"
#include "legcalc/model.hpp"
#include "legcalc/oracles.hpp"
#include "legcalc/projection.hpp"
#include "legcalc/rng.hpp"
