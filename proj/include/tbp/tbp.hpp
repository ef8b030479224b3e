#pragma once

#include "tbp/error.hpp"
#include "tbp/lattice.hpp"
#include "tbp/patterns.hpp"
#include "tbp/window.hpp"
#include "tbp/closure.hpp"
#include "tbp/search.hpp"
#include "tbp/periodic.hpp"
#include "tbp/constructions.hpp"
#include "tbp/json.hpp"
#include "tbp/render.hpp"
