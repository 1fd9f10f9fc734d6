#pragma once

#include "sepcanon/error.hpp"
#include "sepcanon/curve_graph.hpp"
#include "sepcanon/separators.hpp"
#include "sepcanon/azimuths.hpp"
#include "sepcanon/marking.hpp"
#include "sepcanon/hyperelliptic.hpp"
#include "sepcanon/sepcanonical.hpp"
#include "sepcanon/io.hpp"
