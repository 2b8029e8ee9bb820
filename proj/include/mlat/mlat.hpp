#pragma once

// Umbrella header for the mlat library.

#include "mlat/arith.hpp"
#include "mlat/matrix.hpp"
#include "mlat/lattice.hpp"
#include "mlat/discriminant.hpp"
#include "mlat/isometry.hpp"
#include "mlat/weyl.hpp"
#include "mlat/search.hpp"
#include "mlat/split.hpp"
#include "mlat/companion.hpp"
#include "mlat/lemsimo.hpp"
#include "mlat/mukai.hpp"
#include "mlat/monodromy.hpp"
#include "mlat/json_io.hpp"
#include "mlat/verify.hpp"
