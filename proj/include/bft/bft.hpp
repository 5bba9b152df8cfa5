#pragma once

#include "bft/algebra.hpp"
#include "bft/conditioning.hpp"
#include "bft/expr.hpp"
#include "bft/fusion.hpp"
#include "bft/mass.hpp"
#include "bft/render.hpp"
#include "bft/scenario.hpp"
