#pragma once

#include "rnet/comparison.hpp"
#include "rnet/energy_space.hpp"
#include "rnet/families.hpp"
#include "rnet/io.hpp"
#include "rnet/network.hpp"
#include "rnet/solver.hpp"
#include "rnet/spectral.hpp"
#include "rnet/walks.hpp"
