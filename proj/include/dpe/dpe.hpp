#pragma once

#include "dpe/dpp.hpp"
#include "dpe/exact.hpp"
#include "dpe/kernels.hpp"
#include "dpe/limits.hpp"
#include "dpe/numeric.hpp"
#include "dpe/orthopoly.hpp"
#include "dpe/partition.hpp"
