#pragma once

#include "lhall/bigint.hpp"
#include "lhall/ehrhart.hpp"
#include "lhall/parbox.hpp"
#include "lhall/reversal.hpp"
#include "lhall/seq.hpp"
#include "lhall/stats.hpp"
