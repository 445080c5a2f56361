#pragma once

#include "adb/approx.hpp"
#include "adb/batch.hpp"
#include "adb/errors.hpp"
#include "adb/grid.hpp"
#include "adb/interp.hpp"
#include "adb/io.hpp"
#include "adb/learner.hpp"
