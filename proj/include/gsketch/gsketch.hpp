#pragma once

// Umbrella header pulling in the whole library.

#include "gsketch/bounds.hpp"
#include "gsketch/codebook.hpp"
#include "gsketch/error.hpp"
#include "gsketch/experiments.hpp"
#include "gsketch/graph.hpp"
#include "gsketch/io.hpp"
#include "gsketch/matrix.hpp"
#include "gsketch/rng.hpp"
#include "gsketch/sketch.hpp"
#include "gsketch/sparse.hpp"
