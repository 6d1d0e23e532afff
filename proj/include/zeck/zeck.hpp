#pragma once

#include "counting.hpp"
#include "errors.hpp"
#include "grammar.hpp"
#include "parallel.hpp"
#include "recurrence.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "stats.hpp"
