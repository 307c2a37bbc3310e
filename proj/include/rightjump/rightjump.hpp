#pragma once

#include "rightjump/asymptotics.hpp"
#include "rightjump/basis.hpp"
#include "rightjump/bigint.hpp"
#include "rightjump/congruence.hpp"
#include "rightjump/distribution.hpp"
#include "rightjump/error.hpp"
#include "rightjump/jumps.hpp"
#include "rightjump/permutation.hpp"
#include "rightjump/sequences.hpp"
#include "rightjump/triangle.hpp"
#include "rightjump/verify.hpp"
