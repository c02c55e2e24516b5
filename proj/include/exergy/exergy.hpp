#pragma once

#include "exergy/components.hpp"
#include "exergy/error.hpp"
#include "exergy/fluid_state.hpp"
#include "exergy/plant.hpp"
#include "exergy/plant_file.hpp"
#include "exergy/property_table.hpp"
#include "exergy/reference_plant.hpp"
#include "exergy/render.hpp"
#include "exergy/sweep.hpp"
#include "exergy/units.hpp"
