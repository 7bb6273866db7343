#pragma once

#include "lcusim/bits.hpp"
#include "lcusim/densmat.hpp"
#include "lcusim/gates.hpp"
#include "lcusim/io.hpp"
#include "lcusim/ladder.hpp"
#include "lcusim/matrix.hpp"
#include "lcusim/qrw.hpp"
#include "lcusim/statevec.hpp"
#include "lcusim/version.hpp"
