#pragma once

#include "copface/error.hpp"
#include "copface/tolerance.hpp"
#include "copface/index_set.hpp"
#include "copface/sym_matrix.hpp"
#include "copface/linalg.hpp"
#include "copface/copositive.hpp"
#include "copface/zeros.hpp"
#include "copface/zeros_graph.hpp"
#include "copface/face_geometry.hpp"
#include "copface/constructions.hpp"
#include "copface/bounds.hpp"
#include "copface/json.hpp"
