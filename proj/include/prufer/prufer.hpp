#pragma once

// Umbrella header.

#include "prufer/canonical.hpp"
#include "prufer/characters.hpp"
#include "prufer/combination.hpp"
#include "prufer/construction.hpp"
#include "prufer/element.hpp"
#include "prufer/sequences.hpp"
#include "prufer/window.hpp"
