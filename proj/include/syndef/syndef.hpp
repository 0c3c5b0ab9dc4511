#pragma once

#include "syndef/array_code.hpp"
#include "syndef/binary.hpp"
#include "syndef/bounds.hpp"
#include "syndef/c2d.hpp"
#include "syndef/core.hpp"
#include "syndef/cover.hpp"
#include "syndef/errors.hpp"
#include "syndef/kdcc.hpp"
#include "syndef/rng.hpp"
#include "syndef/sdcc.hpp"
#include "syndef/sketch.hpp"
#include "syndef/sketch_code.hpp"
