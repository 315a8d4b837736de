#pragma once
// Umbrella header: pulls in every module of the library.

#include "pyrinfo/attack.hpp"
#include "pyrinfo/emit.hpp"
#include "pyrinfo/golden.hpp"
#include "pyrinfo/information.hpp"
#include "pyrinfo/measurements.hpp"
#include "pyrinfo/numerics.hpp"
#include "pyrinfo/optimizer.hpp"
#include "pyrinfo/pyramid.hpp"
#include "pyrinfo/thresholds.hpp"
#include "pyrinfo/version.hpp"
