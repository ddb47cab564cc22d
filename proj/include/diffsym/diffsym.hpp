#pragma once

#include "core.hpp"
#include "cyclo.hpp"
#include "deriv.hpp"
#include "kummer.hpp"
#include "matdiff.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "ode.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"
#include "random.hpp"
#include "replay.hpp"
#include "scalars.hpp"
#include "serialize.hpp"
#include "split.hpp"
#include "symalg.hpp"

namespace diffsym {

inline constexpr const char* version = "0.1.0";

}  // namespace diffsym
