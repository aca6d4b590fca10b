#pragma once

// Umbrella header for the esg library.

#include "esg/access.hpp"
#include "esg/algebra.hpp"
#include "esg/composition.hpp"
#include "esg/copycat.hpp"
#include "esg/event_structure.hpp"
#include "esg/expansion.hpp"
#include "esg/formula.hpp"
#include "esg/game.hpp"
#include "esg/generators.hpp"
#include "esg/induced.hpp"
#include "esg/json_io.hpp"
#include "esg/model_games.hpp"
#include "esg/neutral.hpp"
#include "esg/semantics.hpp"
#include "esg/strategy.hpp"
#include "esg/suites.hpp"
#include "esg/validation.hpp"
