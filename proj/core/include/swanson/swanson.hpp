#pragma once

#include "swanson/coeff_fn.hpp"
#include "swanson/diffop.hpp"
#include "swanson/error.hpp"
#include "swanson/jet.hpp"
#include "swanson/numeric.hpp"
#include "swanson/params.hpp"
#include "swanson/potentials.hpp"
#include "swanson/specialfn.hpp"
#include "swanson/spectrum.hpp"
