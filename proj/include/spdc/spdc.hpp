#pragma once

// Umbrella header: the whole photon-pair source design toolkit.

#include "beam.hpp"
#include "collection.hpp"
#include "config.hpp"
#include "crystal.hpp"
#include "designer.hpp"
#include "errors.hpp"
#include "gaussian_optics.hpp"
#include "grid.hpp"
#include "heralding.hpp"
#include "io.hpp"
#include "joint_amplitude.hpp"
#include "numeric.hpp"
#include "phasematching.hpp"
#include "pump.hpp"
#include "schmidt.hpp"
#include "sellmeier.hpp"
#include "toy_model.hpp"
