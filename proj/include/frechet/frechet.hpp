#pragma once

#include "frechet/geometry.hpp"
#include "frechet/freespace.hpp"
#include "frechet/discrete.hpp"
#include "frechet/door_order.hpp"
#include "frechet/strip.hpp"
#include "frechet/fast_decider.hpp"
#include "frechet/packed.hpp"
#include "frechet/wordram.hpp"
#include "frechet/optimizer.hpp"
#include "frechet/generators.hpp"
#include "frechet/io.hpp"
