#pragma once

#include "dmans/dm/dark_matter.hpp"
#include "dmans/eos/assembly.hpp"
#include "dmans/eos/interpolator.hpp"
#include "dmans/eos/table.hpp"
#include "dmans/perturbations/fmode.hpp"
#include "dmans/perturbations/love.hpp"
#include "dmans/perturbations/tidal.hpp"
#include "dmans/relations/canonical.hpp"
#include "dmans/relations/contour.hpp"
#include "dmans/relations/polyfit.hpp"
#include "dmans/rmf/core_table.hpp"
#include "dmans/rmf/mean_field.hpp"
#include "dmans/rmf/parameters.hpp"
#include "dmans/rmf/saturation.hpp"
#include "dmans/structure/integrator.hpp"
#include "dmans/structure/tov.hpp"
#include "dmans/workbench/commands.hpp"
#include "dmans/workbench/config.hpp"
#include "dmans/workbench/pipeline.hpp"
