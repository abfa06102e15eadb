#pragma once

#include "dfc/errors.hpp"
#include "dfc/fracops.hpp"
#include "dfc/grid.hpp"
#include "dfc/identities.hpp"
#include "dfc/io.hpp"
#include "dfc/kernelmath.hpp"
#include "dfc/scalar.hpp"
