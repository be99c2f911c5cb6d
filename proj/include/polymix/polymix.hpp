#pragma once

#include "polymix/errors.hpp"
#include "polymix/fp_laurent.hpp"
#include "polymix/haar_measure.hpp"
#include "polymix/mixing_analysis.hpp"
#include "polymix/newton_polytope.hpp"
#include "polymix/parallel_redraw.hpp"
#include "polymix/quotient_ring.hpp"
#include "polymix/sequence_geometry.hpp"
