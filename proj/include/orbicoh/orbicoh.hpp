/// @file orbicoh.hpp
/// Convenience umbrella for the whole library.

#ifndef ORBICOH_ORBICOH_HPP
#define ORBICOH_ORBICOH_HPP

#include "orbicoh/atlas.hpp"
#include "orbicoh/cohomology.hpp"
#include "orbicoh/errors.hpp"
#include "orbicoh/graded_dims.hpp"
#include "orbicoh/groups.hpp"
#include "orbicoh/labels.hpp"
#include "orbicoh/loader.hpp"
#include "orbicoh/model_spaces.hpp"
#include "orbicoh/presentations.hpp"
#include "orbicoh/rational.hpp"
#include "orbicoh/reports.hpp"
#include "orbicoh/ring.hpp"
#include "orbicoh/sectors.hpp"

#endif
