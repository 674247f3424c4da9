#pragma once

#include "henon_atlas/cubic.hpp"
#include "henon_atlas/errors.hpp"
#include "henon_atlas/image.hpp"
#include "henon_atlas/lyapunov.hpp"
#include "henon_atlas/manifold.hpp"
#include "henon_atlas/map_core.hpp"
#include "henon_atlas/parallel.hpp"
#include "henon_atlas/polynomial.hpp"
#include "henon_atlas/presets.hpp"
#include "henon_atlas/spec_file.hpp"
#include "henon_atlas/spectrum.hpp"
#include "henon_atlas/sweep.hpp"
